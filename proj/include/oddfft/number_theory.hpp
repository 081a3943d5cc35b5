#pragma once

/*
 * Integer arithmetic over Z(D) for odd D, kept in centered form: every
 * residue is represented by the unique value in [-(D-1)/2, (D-1)/2].
 *
 * Two index decompositions of Z(D) are provided:
 *   - the balanced base-d digit expansion for D = d^n, which is a
 *     bijection of sets but NOT a ring map (carries are lost), and
 *   - the coprime-factor residue maps for D = d_0...d_{n-1}, which ARE
 *     ring isomorphisms assembled from the idempotents of the
 *     reconstruction constants.
 *
 * The fast transforms are built entirely on these maps.
 */

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "oddfft/common.hpp"

namespace oddfft {

namespace detail {

// Centered representative of x mod m, no validation.
inline i64 center(i64 x, i64 m) {
    i64 r = x % m;
    if (r < 0)
        r += m;
    if (r > (m - 1) / 2)
        r -= m;
    return r;
}

// x mod m in [0, m), no validation.
inline i64 floor_mod(i64 x, i64 m) {
    i64 r = x % m;
    return r < 0 ? r + m : r;
}

} // namespace detail

inline void require_odd_modulus(i64 m) {
    if (m < 1 || m % 2 == 0)
        throw invalid_modulus_error("modulus must be odd and positive, got " +
                                    std::to_string(m));
}

/// Half-width of the centered period of Z(m): residues live in
/// [-half_span(m), half_span(m)].
inline i64 half_span(i64 m) { return (m - 1) / 2; }

/// An element of Z(D), D odd, held as its centered representative.
/// Equality is exact: canonical form is unique.
struct CenteredResidue {
    i64 value = 0;
    i64 modulus = 1;

    friend bool operator==(const CenteredResidue&, const CenteredResidue&) = default;
};

/// Reduce an arbitrary integer into the centered period of Z(m).
inline CenteredResidue centered_reduce(i64 x, i64 m) {
    require_odd_modulus(m);
    return {detail::center(x, m), m};
}

/// Multiplicative inverse of x mod m, in [0, m). Extended Euclid;
/// throws no_inverse_error when gcd(x, m) != 1.
inline i64 mod_inverse(i64 x, i64 m) {
    if (m <= 0)
        throw invalid_modulus_error("modulus must be positive, got " + std::to_string(m));
    i64 old_r = detail::floor_mod(x, m), r = m;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        i64 q = old_r / r;
        i64 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1)
        throw no_inverse_error("no inverse of " + std::to_string(x) + " mod " +
                               std::to_string(m) + " (gcd = " + std::to_string(old_r) + ")");
    return detail::floor_mod(old_s, m);
}

/// The inverse of 2 in Z(D) for odd D, which is (D+1)/2.
inline i64 half_inverse(i64 modulus) {
    require_odd_modulus(modulus);
    return (modulus + 1) / 2;
}

/// omega(r, s) = exp(i 2 pi s / r), the order-r root of unity at
/// exponent s. Periodic in s with period r; s may be negative.
inline cplx omega(i64 order, i64 exponent) {
    if (order <= 0)
        throw invalid_argument_error("root order must be positive, got " +
                                     std::to_string(order));
    i64 e = detail::floor_mod(exponent, order);
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) /
                               static_cast<double>(order));
}

/// Tabulated roots of unity for one modulus: values[e] = omega(modulus, e).
/// Filled once per plan so transforms never touch transcendentals.
struct RootTable {
    i64 modulus = 1;
    std::vector<cplx> values;

    static RootTable make(i64 modulus) {
        if (modulus <= 0)
            throw invalid_argument_error("root order must be positive");
        RootTable t;
        t.modulus = modulus;
        t.values.resize(static_cast<std::size_t>(modulus));
        for (i64 e = 0; e < modulus; ++e)
            t.values[static_cast<std::size_t>(e)] = omega(modulus, e);
        return t;
    }

    // Exponent may be negative or unreduced.
    const cplx& at(i64 exponent) const {
        return values[static_cast<std::size_t>(detail::floor_mod(exponent, modulus))];
    }
};

/// d^n with an overflow/capacity guard.
inline i64 checked_power(i64 d, int n, i64 limit = kMaxDimension) {
    if (d < 1 || n < 1)
        throw invalid_argument_error("power arguments must be positive");
    i64 v = 1;
    for (int i = 0; i < n; ++i) {
        if (v > limit / d)
            throw capacity_error(std::to_string(d) + "^" + std::to_string(n) +
                                 " exceeds the supported dimension " + std::to_string(limit));
        v *= d;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Balanced base-d digits, D = d^n.
// ---------------------------------------------------------------------------

/// Balanced base-d expansion of a centered residue J in Z(d^n):
/// digits j_r in [-(d-1)/2, (d-1)/2] with J = sum_r j_r d^r.
struct RadixDigits {
    i64 base = 3;
    std::vector<i64> digits;

    int length() const { return static_cast<int>(digits.size()); }

    friend bool operator==(const RadixDigits&, const RadixDigits&) = default;
};

inline void require_odd_base(i64 d) {
    if (d < 3 || d % 2 == 0)
        throw invalid_modulus_error("digit base must be an odd integer >= 3, got " +
                                    std::to_string(d));
}

/// Expand J in Z(d^n) into balanced digits by repeated division with
/// centered remainder: each step peels off j_r = center(x mod d) and
/// continues with the exact quotient (x - j_r)/d.
inline RadixDigits radix_encode(const CenteredResidue& J, i64 d, int n) {
    require_odd_base(d);
    if (n < 1)
        throw invalid_argument_error("digit count must be >= 1");
    const i64 dim = checked_power(d, n);
    if (J.modulus != dim)
        throw dimension_mismatch_error("residue modulus " + std::to_string(J.modulus) +
                                       " does not equal " + std::to_string(d) + "^" +
                                       std::to_string(n));
    RadixDigits out;
    out.base = d;
    out.digits.resize(static_cast<std::size_t>(n));
    i64 x = detail::center(J.value, dim);
    for (int r = 0; r < n; ++r) {
        i64 j = detail::center(x, d);
        out.digits[static_cast<std::size_t>(r)] = j;
        x = (x - j) / d;
    }
    return out;
}

/// Rebuild J = sum_r j_r d^r from balanced digits. The sum of in-range
/// digits always lands inside the centered period of Z(d^n).
inline CenteredResidue radix_decode(const RadixDigits& digits) {
    require_odd_base(digits.base);
    if (digits.digits.empty())
        throw invalid_argument_error("digit sequence is empty");
    const i64 d = digits.base;
    const i64 dim = checked_power(d, digits.length());
    const i64 h = half_span(d);
    i64 value = 0;
    i64 scale = 1;
    for (int r = 0; r < digits.length(); ++r) {
        const i64 j = digits.digits[static_cast<std::size_t>(r)];
        if (j < -h || j > h)
            throw invalid_digit_error("digit " + std::to_string(j) + " at position " +
                                      std::to_string(r) + " is outside the centered range of base " +
                                      std::to_string(d));
        value += j * scale;
        scale *= d;
    }
    return centered_reduce(value, dim);
}

// ---------------------------------------------------------------------------
// Coprime-factor residue maps, D = d_0 ... d_{n-1}.
// ---------------------------------------------------------------------------

/// Pairwise-coprime odd factors of D together with the reconstruction
/// constants: cofactors D/d_nu, their inverses mod d_nu, and the
/// idempotents e_nu = cofactor_nu * inverse_nu mod D. The idempotents
/// satisfy e_nu e_mu = e_nu delta_{nu,mu} mod D, which is what makes
/// componentwise reconstruction a ring isomorphism.
struct CrtBasis {
    std::vector<i64> factors;
    i64 dimension = 1;
    std::vector<i64> cofactors;
    std::vector<i64> cofactor_inverses;
    std::vector<i64> idempotents;

    int factor_count() const { return static_cast<int>(factors.size()); }
};

inline CrtBasis make_crt_basis(const std::vector<i64>& factors) {
    if (factors.empty())
        throw invalid_argument_error("factor list is empty");
    for (i64 f : factors)
        require_odd_base(f);
    for (std::size_t a = 0; a < factors.size(); ++a)
        for (std::size_t b = a + 1; b < factors.size(); ++b)
            if (std::gcd(factors[a], factors[b]) != 1)
                throw coprimality_error("factors " + std::to_string(factors[a]) + " and " +
                                        std::to_string(factors[b]) + " are not coprime");

    CrtBasis basis;
    basis.factors = factors;
    for (i64 f : factors) {
        if (basis.dimension > kMaxDimension / f)
            throw capacity_error("factor product exceeds the supported dimension");
        basis.dimension *= f;
    }
    const i64 dim = basis.dimension;
    const int n = basis.factor_count();
    basis.cofactors.resize(static_cast<std::size_t>(n));
    basis.cofactor_inverses.resize(static_cast<std::size_t>(n));
    basis.idempotents.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const auto i = static_cast<std::size_t>(v);
        basis.cofactors[i] = dim / factors[i];
        basis.cofactor_inverses[i] = mod_inverse(basis.cofactors[i], factors[i]);
        basis.idempotents[i] = detail::floor_mod(basis.cofactors[i] * basis.cofactor_inverses[i], dim);
    }

    // The idempotent identities must hold for every pair before the
    // basis is released to callers.
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u) {
            const auto iv = static_cast<std::size_t>(v);
            const auto iu = static_cast<std::size_t>(u);
            const i64 av = basis.cofactors[iv], au = basis.cofactors[iu];
            const i64 ev = basis.idempotents[iv], eu = basis.idempotents[iu];
            const bool diag = (v == u);
            if (detail::floor_mod(av * au, dim) != (diag ? detail::floor_mod(av * av, dim) : 0) ||
                detail::floor_mod(ev * eu, dim) != (diag ? ev : 0) ||
                detail::floor_mod(av * eu, dim) != (diag ? av : 0))
                throw error("reconstruction constants failed their self-check");
        }
    return basis;
}

/// Componentwise residues of J: j_nu = center(J mod d_nu). This map is
/// a ring isomorphism between Z(D) and the product of the Z(d_nu).
inline std::vector<i64> crt_encode(const CenteredResidue& J, const CrtBasis& basis) {
    if (J.modulus != basis.dimension)
        throw dimension_mismatch_error("residue modulus " + std::to_string(J.modulus) +
                                       " does not match basis dimension " +
                                       std::to_string(basis.dimension));
    std::vector<i64> out(basis.factors.size());
    for (std::size_t v = 0; v < basis.factors.size(); ++v)
        out[v] = detail::center(J.value, basis.factors[v]);
    return out;
}

/// Reconstruct J = sum_nu j_nu e_nu mod D from componentwise residues.
/// Components may be any representatives; they are reduced on use.
inline CenteredResidue crt_decode(const std::vector<i64>& components, const CrtBasis& basis) {
    if (components.size() != basis.factors.size())
        throw dimension_mismatch_error("expected " + std::to_string(basis.factors.size()) +
                                       " components, got " + std::to_string(components.size()));
    i64 acc = 0;
    for (std::size_t v = 0; v < components.size(); ++v) {
        const i64 j = detail::floor_mod(components[v], basis.factors[v]);
        acc = detail::floor_mod(acc + j * basis.idempotents[v], basis.dimension);
    }
    return centered_reduce(acc, basis.dimension);
}

/// The dual component map: j^_nu = center(J * inverse_nu mod d_nu),
/// the expansion J = sum_nu j^_nu cofactor_nu mod D. Related to
/// crt_encode componentwise by multiplication with inverse_nu.
inline std::vector<i64> crt_encode_dual(const CenteredResidue& J, const CrtBasis& basis) {
    if (J.modulus != basis.dimension)
        throw dimension_mismatch_error("residue modulus " + std::to_string(J.modulus) +
                                       " does not match basis dimension " +
                                       std::to_string(basis.dimension));
    std::vector<i64> out(basis.factors.size());
    for (std::size_t v = 0; v < basis.factors.size(); ++v)
        out[v] = detail::center(J.value * basis.cofactor_inverses[v], basis.factors[v]);
    return out;
}

/// Split an odd D >= 3 into its prime-power parts by trial division.
/// The parts are pairwise coprime and each is odd and >= 3, so the
/// result is always a valid factor list for make_crt_basis.
inline std::vector<i64> coprime_factorization(i64 dimension) {
    require_odd_modulus(dimension);
    if (dimension < 3)
        throw invalid_argument_error("dimension must be at least 3");
    std::vector<i64> parts;
    i64 rest = dimension;
    for (i64 p = 3; p * p <= rest; p += 2) {
        if (rest % p != 0)
            continue;
        i64 q = 1;
        while (rest % p == 0) {
            q *= p;
            rest /= p;
        }
        parts.push_back(q);
    }
    if (rest > 1)
        parts.push_back(rest);
    return parts;
}

} // namespace oddfft

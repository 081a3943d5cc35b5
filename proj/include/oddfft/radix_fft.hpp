#pragma once

/*
 * Fast Fourier transform on Z(D) for D = d^n with odd d: n stages of
 * d-point transforms over balanced digits, connected by twiddle
 * factors, followed by one digit-reversal permutation.
 *
 * Layout fact this file leans on: the storage offset u = J + (D-1)/2
 * of a centered index J has standard base-d digits u_m = j_m + (d-1)/2
 * where j_m are the balanced digits of J. A state buffer is therefore
 * already the n-dimensional d x ... x d tensor with digit m on the
 * axis of stride d^m -- no gather is needed on entry.
 *
 * Stage r (r = 1..n) consumes the summation index on axis n-r and
 * produces digit j_{r-1} in its place. Before the d-point sum, each
 * entry is multiplied by the accumulated twiddle of the digits already
 * produced; the product of those factors collapses into the single
 * lookup omega_{d^r}(P k), where P = sum_{m<=r-2} j_m d^m is the value
 * of the digit prefix. After stage n, digit j_m sits on axis n-1-m,
 * so reversing the axes puts the output into standard layout.
 */

#include <cmath>
#include <cstdlib>
#include <future>
#include <vector>

#include "oddfft/common.hpp"
#include "oddfft/number_theory.hpp"
#include "oddfft/state_vector.hpp"

namespace oddfft {

struct RadixPlan {
    i64 d = 3;
    int n = 1;
    i64 dimension = 3;
    std::vector<i64> powers;            // powers[m] = d^m, m = 0..n
    std::vector<RootTable> power_roots; // power_roots[m-1] = roots mod d^m
    std::vector<cplx> kernel;           // d x d, omega_d(j k)/sqrt(d), centered j,k
    std::vector<cplx> kernel_conj;      // elementwise conjugate (the matrix is symmetric)

    const RootTable& roots(int m) const {
        return power_roots[static_cast<std::size_t>(m - 1)];
    }
};

inline RadixPlan plan_radix(i64 d, int n) {
    require_odd_base(d);
    if (n < 1)
        throw invalid_argument_error("stage count must be >= 1, got " + std::to_string(n));
    RadixPlan p;
    p.d = d;
    p.n = n;
    p.dimension = checked_power(d, n);
    p.powers.resize(static_cast<std::size_t>(n) + 1);
    p.powers[0] = 1;
    for (int m = 1; m <= n; ++m)
        p.powers[static_cast<std::size_t>(m)] = p.powers[static_cast<std::size_t>(m - 1)] * d;
    p.power_roots.reserve(static_cast<std::size_t>(n));
    for (int m = 1; m <= n; ++m)
        p.power_roots.push_back(RootTable::make(p.powers[static_cast<std::size_t>(m)]));

    const i64 h = half_span(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    p.kernel.resize(static_cast<std::size_t>(d * d));
    p.kernel_conj.resize(static_cast<std::size_t>(d * d));
    for (i64 a = 0; a < d; ++a)
        for (i64 b = 0; b < d; ++b) {
            const cplx v = omega(d, (a - h) * (b - h)) * scale;
            p.kernel[static_cast<std::size_t>(a * d + b)] = v;
            p.kernel_conj[static_cast<std::size_t>(a * d + b)] = std::conj(v);
        }
    return p;
}

namespace detail {

// Digit-prefix value P = sum_{m=0}^{r-2} j_m d^m for stage r, read off
// the outer-loop index o, whose base-d digit g is the stored offset of
// j_{r-2-g} (axes above the stage axis hold the digits produced so far).
inline i64 radix_prefix_value(i64 o, const RadixPlan& plan, int r) {
    const i64 h = half_span(plan.d);
    i64 P = 0;
    for (int g = 0; g <= r - 2; ++g) {
        P += (o % plan.d - h) * plan.powers[static_cast<std::size_t>(r - 2 - g)];
        o /= plan.d;
    }
    return P;
}

inline void radix_forward_stage(std::vector<cplx>& w, const RadixPlan& plan, int r,
                                TransformStats* stats) {
    const i64 d = plan.d;
    const i64 h = half_span(d);
    const i64 stride = plan.powers[static_cast<std::size_t>(plan.n - r)];
    const i64 outer = plan.powers[static_cast<std::size_t>(r - 1)];
    const RootTable& tw = plan.roots(r);
    std::vector<cplx> line(static_cast<std::size_t>(d));

    for (i64 o = 0; o < outer; ++o) {
        const i64 P = radix_prefix_value(o, plan, r);
        cplx* block = w.data() + o * stride * d;
        for (i64 i = 0; i < stride; ++i) {
            cplx* base = block + i;
            if (r == 1) {
                for (i64 t = 0; t < d; ++t)
                    line[static_cast<std::size_t>(t)] = base[t * stride];
            } else {
                for (i64 t = 0; t < d; ++t)
                    line[static_cast<std::size_t>(t)] = base[t * stride] * tw.at(P * (t - h));
            }
            for (i64 a = 0; a < d; ++a) {
                const cplx* krow = plan.kernel.data() + a * d;
                cplx acc = 0.0;
                for (i64 t = 0; t < d; ++t)
                    acc += krow[static_cast<std::size_t>(t)] * line[static_cast<std::size_t>(t)];
                base[a * stride] = acc;
            }
        }
    }
    if (stats) {
        const u64 D = static_cast<u64>(plan.dimension);
        stats->kernel_mults += D * static_cast<u64>(d);
        if (r >= 2)
            stats->twiddle_mults += D;
    }
}

// Exact undo of radix_forward_stage: conjugated d-point sum over the
// digit axis, then the conjugated twiddle.
inline void radix_inverse_stage(std::vector<cplx>& w, const RadixPlan& plan, int r,
                                TransformStats* stats) {
    const i64 d = plan.d;
    const i64 h = half_span(d);
    const i64 stride = plan.powers[static_cast<std::size_t>(plan.n - r)];
    const i64 outer = plan.powers[static_cast<std::size_t>(r - 1)];
    const RootTable& tw = plan.roots(r);
    std::vector<cplx> line(static_cast<std::size_t>(d));

    for (i64 o = 0; o < outer; ++o) {
        const i64 P = radix_prefix_value(o, plan, r);
        cplx* block = w.data() + o * stride * d;
        for (i64 i = 0; i < stride; ++i) {
            cplx* base = block + i;
            for (i64 t = 0; t < d; ++t)
                line[static_cast<std::size_t>(t)] = base[t * stride];
            for (i64 a = 0; a < d; ++a) {
                const cplx* krow = plan.kernel_conj.data() + a * d;
                cplx acc = 0.0;
                for (i64 t = 0; t < d; ++t)
                    acc += krow[static_cast<std::size_t>(t)] * line[static_cast<std::size_t>(t)];
                if (r >= 2)
                    acc *= tw.at(-P * (a - h));
                base[a * stride] = acc;
            }
        }
    }
    if (stats) {
        const u64 D = static_cast<u64>(plan.dimension);
        stats->kernel_mults += D * static_cast<u64>(d);
        if (r >= 2)
            stats->twiddle_mults += D;
    }
}

// Swap axis l with axis n-1-l for every l: offset digits reversed in
// base d. The permutation is an involution, so swapping once when the
// image exceeds the source visits every cycle exactly once.
inline void digit_reverse_permute(std::vector<cplx>& w, const RadixPlan& plan) {
    const i64 d = plan.d;
    for (i64 u = 0; u < plan.dimension; ++u) {
        i64 v = 0, q = u;
        for (int m = 0; m < plan.n; ++m) {
            v = v * d + q % d;
            q /= d;
        }
        if (v > u)
            std::swap(w[static_cast<std::size_t>(u)], w[static_cast<std::size_t>(v)]);
    }
}

inline void require_plan_match(const StateVector& s, i64 plan_dimension) {
    s.validate();
    if (s.dimension != plan_dimension)
        throw dimension_mismatch_error("state dimension " + std::to_string(s.dimension) +
                                       " does not match plan dimension " +
                                       std::to_string(plan_dimension));
}

} // namespace detail

inline StateVector fft_radix(const StateVector& s, const RadixPlan& plan,
                             TransformStats* stats = nullptr) {
    detail::require_plan_match(s, plan.dimension);
    StateVector out = s;
    for (int r = 1; r <= plan.n; ++r)
        detail::radix_forward_stage(out.amplitudes, plan, r, stats);
    detail::digit_reverse_permute(out.amplitudes, plan);
    return out;
}

inline StateVector ifft_radix(const StateVector& s, const RadixPlan& plan,
                              TransformStats* stats = nullptr) {
    detail::require_plan_match(s, plan.dimension);
    StateVector out = s;
    detail::digit_reverse_permute(out.amplitudes, plan);
    for (int r = plan.n; r >= 1; --r)
        detail::radix_inverse_stage(out.amplitudes, plan, r, stats);
    return out;
}

/// Forward intermediates for inspection: element 0 is the input buffer,
/// element r the working array after stage r, all in tensor layout
/// (i.e. before the final digit reversal that fft_radix applies).
inline std::vector<std::vector<cplx>> radix_stage_buffers(const StateVector& s,
                                                          const RadixPlan& plan) {
    detail::require_plan_match(s, plan.dimension);
    std::vector<std::vector<cplx>> snaps;
    snaps.reserve(static_cast<std::size_t>(plan.n) + 1);
    std::vector<cplx> w = s.amplitudes;
    snaps.push_back(w);
    for (int r = 1; r <= plan.n; ++r) {
        detail::radix_forward_stage(w, plan, r, nullptr);
        snaps.push_back(w);
    }
    return snaps;
}

// ---------------------------------------------------------------------------
// Factorized-state path: when the input is a tensor product of n
// length-d factors, the full transform splits into n independent
// factor tables that can be built concurrently and assembled pointwise.
// ---------------------------------------------------------------------------

/// Transform of a product state, held in factored form. tables[r] is
/// indexed by the digit prefix (j_0 ... j_r) with j_0 most significant,
/// so it has d^(r+1) entries; the value of the full transform at J is
/// the product of one entry from each table.
struct FactorizedTransform {
    i64 d = 3;
    int n = 1;
    std::vector<std::vector<cplx>> tables;

    StateVector assemble() const {
        const i64 D = checked_power(d, n);
        StateVector out = StateVector::zero(D);
        std::vector<i64> dig(static_cast<std::size_t>(n));
        for (i64 u = 0; u < D; ++u) {
            i64 q = u;
            for (int m = 0; m < n; ++m) {
                dig[static_cast<std::size_t>(m)] = q % d;
                q /= d;
            }
            i64 idx = dig[0];
            cplx v = tables[0][static_cast<std::size_t>(idx)];
            for (int r = 1; r < n; ++r) {
                idx = idx * d + dig[static_cast<std::size_t>(r)];
                v *= tables[static_cast<std::size_t>(r)][static_cast<std::size_t>(idx)];
            }
            out.amplitudes[static_cast<std::size_t>(u)] = v;
        }
        return out;
    }
};

/// Full state s(k_0,...,k_{n-1}) = prod_m g_m(k_m) from n length-d
/// factors; factor m varies along the axis of stride d^m.
inline StateVector tensor_product_state(const std::vector<std::vector<cplx>>& factors, i64 d) {
    require_odd_base(d);
    const int n = static_cast<int>(factors.size());
    if (n < 1)
        throw invalid_argument_error("factor list is empty");
    for (const auto& g : factors)
        if (g.size() != static_cast<std::size_t>(d))
            throw dimension_mismatch_error("factor length " + std::to_string(g.size()) +
                                           " does not match d = " + std::to_string(d));
    const i64 D = checked_power(d, n);
    StateVector out = StateVector::zero(D);
    for (i64 u = 0; u < D; ++u) {
        i64 q = u;
        cplx v = 1.0;
        for (int m = 0; m < n; ++m) {
            v *= factors[static_cast<std::size_t>(m)][static_cast<std::size_t>(q % d)];
            q /= d;
        }
        out.amplitudes[static_cast<std::size_t>(u)] = v;
    }
    return out;
}

namespace detail {

// Factor table r: the d-point transform of g_{n-1-r}, twiddled by the
// digit prefix it will be multiplied under. Row p enumerates the
// prefix (j_0 ... j_{r-1}), j_0 most significant.
inline std::vector<cplx> factor_table(const std::vector<cplx>& g, const RadixPlan& plan,
                                      int r, TransformStats* stats) {
    const i64 d = plan.d;
    const i64 h = half_span(d);
    const i64 rows = plan.powers[static_cast<std::size_t>(r)];
    std::vector<cplx> table(static_cast<std::size_t>(rows * d));
    std::vector<cplx> tmp(static_cast<std::size_t>(d));
    const RootTable& tw = plan.roots(r + 1);
    u64 kernel_count = 0, twiddle_count = 0;

    for (i64 p = 0; p < rows; ++p) {
        // Prefix value P = sum_m j_m d^m with j_m = digit m of row p
        // counted from the most significant end.
        i64 P = 0;
        {
            i64 q = p;
            for (int m = r - 1; m >= 0; --m) {
                P += (q % d - h) * plan.powers[static_cast<std::size_t>(m)];
                q /= d;
            }
        }
        if (r == 0) {
            for (i64 t = 0; t < d; ++t)
                tmp[static_cast<std::size_t>(t)] = g[static_cast<std::size_t>(t)];
        } else {
            for (i64 t = 0; t < d; ++t)
                tmp[static_cast<std::size_t>(t)] =
                    g[static_cast<std::size_t>(t)] * tw.at(P * (t - h));
            twiddle_count += static_cast<u64>(d);
        }
        for (i64 a = 0; a < d; ++a) {
            const cplx* krow = plan.kernel.data() + a * d;
            cplx acc = 0.0;
            for (i64 t = 0; t < d; ++t)
                acc += krow[static_cast<std::size_t>(t)] * tmp[static_cast<std::size_t>(t)];
            table[static_cast<std::size_t>(p * d + a)] = acc;
        }
        kernel_count += static_cast<u64>(d) * static_cast<u64>(d);
    }
    if (stats) {
        stats->kernel_mults += kernel_count;
        stats->twiddle_mults += twiddle_count;
    }
    return table;
}

} // namespace detail

/// Transform a product state given only its factors. The n tables are
/// independent; with parallel = true they are built on separate
/// threads, with bit-identical results to the serial path.
inline FactorizedTransform fft_radix_factorized(const std::vector<std::vector<cplx>>& factors,
                                                const RadixPlan& plan, bool parallel = false,
                                                TransformStats* stats = nullptr) {
    if (static_cast<int>(factors.size()) != plan.n)
        throw dimension_mismatch_error("expected " + std::to_string(plan.n) +
                                       " factors, got " + std::to_string(factors.size()));
    for (const auto& g : factors)
        if (g.size() != static_cast<std::size_t>(plan.d))
            throw dimension_mismatch_error("factor length " + std::to_string(g.size()) +
                                           " does not match d = " + std::to_string(plan.d));
    FactorizedTransform out;
    out.d = plan.d;
    out.n = plan.n;
    out.tables.resize(factors.size());

    // Table r transforms factor n-1-r.
    if (!parallel || plan.n == 1) {
        for (int r = 0; r < plan.n; ++r)
            out.tables[static_cast<std::size_t>(r)] = detail::factor_table(
                factors[static_cast<std::size_t>(plan.n - 1 - r)], plan, r, stats);
        return out;
    }

    std::vector<TransformStats> per_table(factors.size());
    std::vector<std::future<std::vector<cplx>>> jobs;
    jobs.reserve(factors.size());
    for (int r = 0; r < plan.n; ++r)
        jobs.push_back(std::async(std::launch::async, [&, r] {
            return detail::factor_table(factors[static_cast<std::size_t>(plan.n - 1 - r)], plan,
                                        r, &per_table[static_cast<std::size_t>(r)]);
        }));
    for (int r = 0; r < plan.n; ++r)
        out.tables[static_cast<std::size_t>(r)] = jobs[static_cast<std::size_t>(r)].get();
    if (stats)
        for (const auto& t : per_table) {
            stats->kernel_mults += t.kernel_mults;
            stats->twiddle_mults += t.twiddle_mults;
        }
    return out;
}

/// Necessary (but not sufficient) condition for s to be a tensor
/// product over the d x ... x d layout: |s| must factor into the
/// square roots of its per-axis marginals. Comparison is relative,
/// floored at the RMS amplitude so exact zeros do not produce noise.
inline bool factorization_necessary_check(const StateVector& s, i64 d, int n,
                                          double tol = 1e-9) {
    s.validate();
    require_odd_base(d);
    if (n < 1)
        throw invalid_argument_error("factor count must be >= 1");
    if (checked_power(d, n) != s.dimension)
        throw dimension_mismatch_error(std::to_string(d) + "^" + std::to_string(n) +
                                       " does not match state dimension " +
                                       std::to_string(s.dimension));
    const i64 D = s.dimension;
    std::vector<double> marginal(static_cast<std::size_t>(n) * static_cast<std::size_t>(d), 0.0);
    for (i64 u = 0; u < D; ++u) {
        const double w = std::norm(s.amplitudes[static_cast<std::size_t>(u)]);
        i64 q = u;
        for (int m = 0; m < n; ++m) {
            marginal[static_cast<std::size_t>(m * d + q % d)] += w;
            q /= d;
        }
    }
    const double rms = s.norm() / std::sqrt(static_cast<double>(D));
    for (i64 u = 0; u < D; ++u) {
        const double lhs = std::abs(s.amplitudes[static_cast<std::size_t>(u)]);
        double rhs = 1.0;
        i64 q = u;
        for (int m = 0; m < n; ++m) {
            rhs *= std::sqrt(marginal[static_cast<std::size_t>(m * d + q % d)]);
            q /= d;
        }
        if (std::abs(lhs - rhs) > tol * std::max({lhs, rhs, rms}))
            return false;
    }
    return true;
}

} // namespace oddfft

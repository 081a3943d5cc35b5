#pragma once

/*
 * Wigner and Weyl functions on the Z(D) x Z(D) phase-space grid, each
 * in a direct form and a fast form.
 *
 *   Weyl:   W~(A,B) = omega_D(2^{-1} A B) sum_K omega_D(A K)   s(K) s*(B + K)
 *   Wigner: W (A,B) = omega_D(2 A B)      sum_K omega_D(-2 A K) s(K) s*(2B - K)
 *
 * with 2^{-1} = (D+1)/2. Neither carries a 1/sqrt(D) normalization.
 *
 * For fixed B the sum over K is a length-D Fourier sum of the product
 * sequence, evaluated at row A (Weyl) or row -2A (Wigner). The direct
 * form does each row by brute force: D^2 kernel multiplications per B,
 * D^3 over the grid. The fast form runs the coprime-factor axis passes
 * on the product sequence instead -- the kernel at row A splits into
 * per-factor rows a_nu = A mod d_nu -- for D * sum_nu d_nu kernel
 * multiplications per B. Only coprime-factor plans are accepted: the
 * balanced-digit scheme has no such row decomposition, because the
 * digit map does not respect the index arithmetic inside s*(B + K).
 */

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "oddfft/common.hpp"
#include "oddfft/number_theory.hpp"
#include "oddfft/prime_factor_fft.hpp"
#include "oddfft/radix_fft.hpp"
#include "oddfft/state_vector.hpp"

namespace oddfft {

// Full-grid tables are D^2 complex values; this keeps them under ~40 MiB.
inline constexpr i64 kMaxPhaseSpaceDimension = 1500;

enum class PhaseSpaceKind { weyl, wigner };

struct PhaseSpaceTable {
    i64 dimension = 1;
    PhaseSpaceKind kind = PhaseSpaceKind::weyl;
    std::vector<cplx> values; // values[(B + h) * D + (A + h)]

    static PhaseSpaceTable zero(i64 dimension, PhaseSpaceKind kind) {
        require_odd_modulus(dimension);
        if (dimension > kMaxPhaseSpaceDimension)
            throw capacity_error("phase-space dimension " + std::to_string(dimension) +
                                 " exceeds the supported maximum " +
                                 std::to_string(kMaxPhaseSpaceDimension));
        PhaseSpaceTable t;
        t.dimension = dimension;
        t.kind = kind;
        t.values.assign(static_cast<std::size_t>(dimension) * static_cast<std::size_t>(dimension),
                        cplx{});
        return t;
    }

    cplx& at(i64 A, i64 B) {
        const i64 h = half_span(dimension);
        return values[static_cast<std::size_t>((B + h) * dimension + (A + h))];
    }
    const cplx& at(i64 A, i64 B) const {
        const i64 h = half_span(dimension);
        return values[static_cast<std::size_t>((B + h) * dimension + (A + h))];
    }
};

/// Largest |Im| over the grid; the Wigner function must be real.
inline double max_imaginary(const PhaseSpaceTable& t) {
    double worst = 0.0;
    for (const cplx& v : t.values)
        worst = std::max(worst, std::abs(v.imag()));
    return worst;
}

/// Largest entrywise |a - b| between two tables of equal shape.
inline double max_entry_difference(const PhaseSpaceTable& a, const PhaseSpaceTable& b) {
    if (a.dimension != b.dimension)
        throw dimension_mismatch_error("phase-space tables differ in dimension");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

namespace detail {

// Product sequence for the Weyl row: p_B(K) = s(K) s*(B+K), built in
// storage order. Offset identity: u(B+K) = (uB + uK - h) mod D.
inline void weyl_product_row(const StateVector& s, i64 uB, std::vector<cplx>& p) {
    const i64 D = s.dimension;
    const i64 h = half_span(D);
    for (i64 uK = 0; uK < D; ++uK) {
        const i64 shifted = (uB + uK - h + D) % D;
        p[static_cast<std::size_t>(uK)] =
            s.amplitudes[static_cast<std::size_t>(uK)] *
            std::conj(s.amplitudes[static_cast<std::size_t>(shifted)]);
    }
}

// Product sequence for the Wigner row: q_B(K) = s(K) s*(2B-K), with
// offset identity u(2B-K) = (2 uB - uK) mod D.
inline void wigner_product_row(const StateVector& s, i64 uB, std::vector<cplx>& q) {
    const i64 D = s.dimension;
    for (i64 uK = 0; uK < D; ++uK) {
        const i64 mirrored = floor_mod(2 * uB - uK, D);
        q[static_cast<std::size_t>(uK)] =
            s.amplitudes[static_cast<std::size_t>(uK)] *
            std::conj(s.amplitudes[static_cast<std::size_t>(mirrored)]);
    }
}

// Brute-force row sum: out[uA] = sum_K omega_D(rowmul * A * K) seq(K).
// The exponent walks by rowmul*A as K steps, so each term is exactly
// one kernel multiplication.
inline void direct_fourier_row(const std::vector<cplx>& seq, const RootTable& roots, i64 rowmul,
                               std::vector<cplx>& out) {
    const i64 D = roots.modulus;
    const i64 h = half_span(D);
    for (i64 uA = 0; uA < D; ++uA) {
        const i64 step = floor_mod(rowmul * (uA - h), D);
        i64 e = floor_mod(step * -h, D);
        cplx acc = 0.0;
        for (i64 uK = 0; uK < D; ++uK) {
            acc += roots.values[static_cast<std::size_t>(e)] * seq[static_cast<std::size_t>(uK)];
            e += step;
            if (e >= D)
                e -= D;
        }
        out[static_cast<std::size_t>(uA)] = acc;
    }
}

inline PhaseSpaceTable phase_space_direct(const StateVector& s, PhaseSpaceKind kind,
                                          TransformStats* stats) {
    s.validate();
    const i64 D = s.dimension;
    const i64 h = half_span(D);
    PhaseSpaceTable table = PhaseSpaceTable::zero(D, kind);
    const RootTable roots = RootTable::make(D);
    const i64 half = half_inverse(D);
    std::vector<cplx> seq(static_cast<std::size_t>(D));
    std::vector<cplx> row(static_cast<std::size_t>(D));

    for (i64 uB = 0; uB < D; ++uB) {
        const i64 B = uB - h;
        if (kind == PhaseSpaceKind::weyl) {
            weyl_product_row(s, uB, seq);
            direct_fourier_row(seq, roots, /*rowmul=*/1, row);
        } else {
            wigner_product_row(s, uB, seq);
            direct_fourier_row(seq, roots, /*rowmul=*/-2, row);
        }
        cplx* dest = table.values.data() + uB * D;
        for (i64 uA = 0; uA < D; ++uA) {
            const i64 A = uA - h;
            const i64 pre = kind == PhaseSpaceKind::weyl ? half * A * B : 2 * A * B;
            dest[uA] = roots.at(pre) * row[static_cast<std::size_t>(uA)];
        }
        if (stats) {
            stats->kernel_mults += static_cast<u64>(D) * static_cast<u64>(D);
            stats->twiddle_mults += 2 * static_cast<u64>(D); // product row + prefactors
        }
    }
    return table;
}

// Per-factor kernels for the fast path, unnormalized: the Weyl row at
// A uses omega_{d}(a b k), the Wigner row the exponent -2 a b k (the
// row index of the full kernel is -2A, reduced componentwise).
inline std::vector<std::vector<cplx>> phase_axis_kernels(const PfaPlan& plan, i64 rowmul) {
    std::vector<std::vector<cplx>> kernels;
    kernels.reserve(static_cast<std::size_t>(plan.factor_count()));
    for (int v = 0; v < plan.factor_count(); ++v) {
        const i64 d = plan.basis.factors[static_cast<std::size_t>(v)];
        const i64 h = half_span(d);
        const i64 b = plan.basis.cofactor_inverses[static_cast<std::size_t>(v)];
        const RootTable& roots = plan.factor_roots[static_cast<std::size_t>(v)];
        std::vector<cplx> kern(static_cast<std::size_t>(d * d));
        for (i64 a = 0; a < d; ++a)
            for (i64 t = 0; t < d; ++t)
                kern[static_cast<std::size_t>(a * d + t)] =
                    roots.at(rowmul * (a - h) * b * (t - h));
        kernels.push_back(std::move(kern));
    }
    return kernels;
}

// Axis pass identical in shape to the transform stage, but with a
// caller-supplied (unnormalized) kernel.
inline void phase_axis_pass(std::vector<cplx>& w, const PfaPlan& plan, int axis,
                            const std::vector<cplx>& kern) {
    const i64 d = plan.basis.factors[static_cast<std::size_t>(axis)];
    const i64 stride = plan.strides[static_cast<std::size_t>(axis)];
    const i64 block = stride * d;
    const i64 outer = plan.dimension / block;
    std::vector<cplx> line(static_cast<std::size_t>(d));
    for (i64 o = 0; o < outer; ++o) {
        cplx* blockp = w.data() + o * block;
        for (i64 i = 0; i < stride; ++i) {
            cplx* base = blockp + i;
            for (i64 t = 0; t < d; ++t)
                line[static_cast<std::size_t>(t)] = base[t * stride];
            for (i64 a = 0; a < d; ++a) {
                const cplx* krow = kern.data() + a * d;
                cplx acc = 0.0;
                for (i64 t = 0; t < d; ++t)
                    acc += krow[static_cast<std::size_t>(t)] * line[static_cast<std::size_t>(t)];
                base[a * stride] = acc;
            }
        }
    }
}

inline PhaseSpaceTable phase_space_fast(const StateVector& s, const PfaPlan& plan,
                                        PhaseSpaceKind kind, TransformStats* stats) {
    require_plan_match_pfa(s, plan);
    const i64 D = plan.dimension;
    const i64 h = half_span(D);
    PhaseSpaceTable table = PhaseSpaceTable::zero(D, kind);
    const i64 rowmul = kind == PhaseSpaceKind::weyl ? 1 : -2;
    const auto kernels = phase_axis_kernels(plan, rowmul);
    const i64 half = half_inverse(D);
    const RootTable& roots = plan.dimension_roots;

    u64 axis_mults = 0;
    for (i64 d : plan.basis.factors)
        axis_mults += static_cast<u64>(D) * static_cast<u64>(d);

    std::vector<cplx> seq(static_cast<std::size_t>(D));
    std::vector<cplx> w(static_cast<std::size_t>(D));
    for (i64 uB = 0; uB < D; ++uB) {
        const i64 B = uB - h;
        if (kind == PhaseSpaceKind::weyl)
            weyl_product_row(s, uB, seq);
        else
            wigner_product_row(s, uB, seq);
        // Gather to tensor order, run the per-factor rows, scatter back.
        for (i64 u = 0; u < D; ++u)
            w[static_cast<std::size_t>(plan.to_tensor[static_cast<std::size_t>(u)])] =
                seq[static_cast<std::size_t>(u)];
        for (int v = plan.factor_count() - 1; v >= 0; --v)
            phase_axis_pass(w, plan, v, kernels[static_cast<std::size_t>(v)]);
        cplx* dest = table.values.data() + uB * D;
        for (i64 uA = 0; uA < D; ++uA) {
            const i64 A = uA - h;
            const i64 pre = kind == PhaseSpaceKind::weyl ? half * A * B : 2 * A * B;
            dest[uA] =
                roots.at(pre) * w[static_cast<std::size_t>(plan.to_tensor[static_cast<std::size_t>(uA)])];
        }
        if (stats) {
            stats->kernel_mults += axis_mults;
            stats->twiddle_mults += 2 * static_cast<u64>(D);
        }
    }
    return table;
}

} // namespace detail

inline PhaseSpaceTable weyl_direct(const StateVector& s, TransformStats* stats = nullptr) {
    return detail::phase_space_direct(s, PhaseSpaceKind::weyl, stats);
}

inline PhaseSpaceTable wigner_direct(const StateVector& s, TransformStats* stats = nullptr) {
    return detail::phase_space_direct(s, PhaseSpaceKind::wigner, stats);
}

inline PhaseSpaceTable weyl_fast(const StateVector& s, const PfaPlan& plan,
                                 TransformStats* stats = nullptr) {
    return detail::phase_space_fast(s, plan, PhaseSpaceKind::weyl, stats);
}

inline PhaseSpaceTable wigner_fast(const StateVector& s, const PfaPlan& plan,
                                   TransformStats* stats = nullptr) {
    return detail::phase_space_fast(s, plan, PhaseSpaceKind::wigner, stats);
}

// The balanced-digit backend cannot host these functions: its digit
// map is not a ring map, so the shifted argument of the product
// sequence has no per-digit form.
inline PhaseSpaceTable weyl_fast(const StateVector&, const RadixPlan&) {
    throw unsupported_backend_error(
        "phase-space functions require a coprime-factor plan; the balanced-digit "
        "backend has no componentwise form for the shifted index");
}

inline PhaseSpaceTable wigner_fast(const StateVector&, const RadixPlan&) {
    throw unsupported_backend_error(
        "phase-space functions require a coprime-factor plan; the balanced-digit "
        "backend has no componentwise form for the shifted index");
}

/// CSV format: header `A,B,real,imag` (or `A,B,real` when real_only),
/// rows in storage order: B ascending in the outer loop, A inner.
inline void write_phase_space_csv(std::ostream& out, const PhaseSpaceTable& t,
                                  bool real_only = false) {
    out << (real_only ? "A,B,real\n" : "A,B,real,imag\n");
    out << std::setprecision(17);
    const i64 h = half_span(t.dimension);
    for (i64 B = -h; B <= h; ++B)
        for (i64 A = -h; A <= h; ++A) {
            const cplx& v = t.at(A, B);
            out << A << ',' << B << ',' << v.real();
            if (!real_only)
                out << ',' << v.imag();
            out << '\n';
        }
    if (!out)
        throw io_error("failed while writing phase-space CSV");
}

inline void write_phase_space_csv(const std::string& path, const PhaseSpaceTable& t,
                                  bool real_only = false) {
    std::ofstream f(path);
    if (!f)
        throw io_error("cannot open " + path + " for writing");
    write_phase_space_csv(f, t, real_only);
}

} // namespace oddfft

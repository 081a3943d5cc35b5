#pragma once

/*
 * Fast Fourier transform on Z(D) for D = d_0 ... d_{n-1} with pairwise
 * coprime odd factors. The componentwise residue map is a ring
 * isomorphism, so the full kernel splits exactly into one small kernel
 * per factor,
 *     omega_D(J K) = prod_nu omega_{d_nu}(j_nu b_nu k_nu),
 * where b_nu inverts D/d_nu mod d_nu. The transform is therefore n
 * independent axis passes over a d_0 x ... x d_{n-1} tensor -- no
 * twiddle factors at all, which is the whole point of the scheme.
 *
 * The b_nu constants are folded into the per-factor kernel tables at
 * plan time; the input is gathered once into tensor order through the
 * componentwise-residue permutation and the output scattered back
 * through the same table.
 */

#include <cmath>
#include <vector>

#include "oddfft/common.hpp"
#include "oddfft/number_theory.hpp"
#include "oddfft/state_vector.hpp"

namespace oddfft {

struct PfaPlan {
    CrtBasis basis;
    i64 dimension = 1;
    std::vector<i64> strides;              // axis nu stride = prod_{mu<nu} d_mu
    std::vector<i64> to_tensor;            // storage offset -> tensor offset
    std::vector<i64> from_tensor;          // tensor offset -> storage offset
    std::vector<RootTable> factor_roots;   // roots mod d_nu
    RootTable dimension_roots;             // roots mod D
    std::vector<std::vector<cplx>> kernels;      // omega_{d}(j b k)/sqrt(d), centered j,k
    std::vector<std::vector<cplx>> kernels_conj; // elementwise conjugates

    int factor_count() const { return basis.factor_count(); }
};

inline PfaPlan plan_pfa(const std::vector<i64>& factors) {
    PfaPlan p;
    p.basis = make_crt_basis(factors);
    p.dimension = p.basis.dimension;
    const i64 D = p.dimension;
    const int n = p.basis.factor_count();

    p.strides.resize(static_cast<std::size_t>(n));
    i64 stride = 1;
    for (int v = 0; v < n; ++v) {
        p.strides[static_cast<std::size_t>(v)] = stride;
        stride *= factors[static_cast<std::size_t>(v)];
    }

    // Componentwise residues of J = u - (D-1)/2, each shifted into its
    // own axis offset: one permutation serves both gather and scatter.
    p.to_tensor.resize(static_cast<std::size_t>(D));
    p.from_tensor.resize(static_cast<std::size_t>(D));
    const i64 hD = half_span(D);
    for (i64 u = 0; u < D; ++u) {
        const i64 J = u - hD;
        i64 tau = 0;
        for (int v = 0; v < n; ++v) {
            const i64 d = factors[static_cast<std::size_t>(v)];
            tau += (detail::center(J, d) + half_span(d)) * p.strides[static_cast<std::size_t>(v)];
        }
        p.to_tensor[static_cast<std::size_t>(u)] = tau;
        p.from_tensor[static_cast<std::size_t>(tau)] = u;
    }

    for (int v = 0; v < n; ++v) {
        const i64 d = factors[static_cast<std::size_t>(v)];
        const i64 h = half_span(d);
        const i64 b = p.basis.cofactor_inverses[static_cast<std::size_t>(v)];
        p.factor_roots.push_back(RootTable::make(d));
        const double scale = 1.0 / std::sqrt(static_cast<double>(d));
        std::vector<cplx> kern(static_cast<std::size_t>(d * d));
        std::vector<cplx> kern_conj(static_cast<std::size_t>(d * d));
        for (i64 a = 0; a < d; ++a)
            for (i64 t = 0; t < d; ++t) {
                const cplx w = omega(d, (a - h) * b * (t - h)) * scale;
                kern[static_cast<std::size_t>(a * d + t)] = w;
                kern_conj[static_cast<std::size_t>(a * d + t)] = std::conj(w);
            }
        p.kernels.push_back(std::move(kern));
        p.kernels_conj.push_back(std::move(kern_conj));
    }
    p.dimension_roots = RootTable::make(D);
    return p;
}

namespace detail {

/// One axis pass: apply the factor-nu kernel along its tensor axis.
/// All passes commute, since each touches a different index.
inline void pfa_axis_pass(std::vector<cplx>& w, const PfaPlan& plan, int axis, bool inverse,
                          TransformStats* stats) {
    const i64 d = plan.basis.factors[static_cast<std::size_t>(axis)];
    const i64 stride = plan.strides[static_cast<std::size_t>(axis)];
    const i64 block = stride * d;
    const i64 outer = plan.dimension / block;
    const std::vector<cplx>& kern = inverse ? plan.kernels_conj[static_cast<std::size_t>(axis)]
                                            : plan.kernels[static_cast<std::size_t>(axis)];
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
    if (stats)
        stats->kernel_mults += static_cast<u64>(plan.dimension) * static_cast<u64>(d);
}

inline std::vector<cplx> pfa_gather(const StateVector& s, const PfaPlan& plan) {
    std::vector<cplx> w(static_cast<std::size_t>(plan.dimension));
    for (i64 u = 0; u < plan.dimension; ++u)
        w[static_cast<std::size_t>(plan.to_tensor[static_cast<std::size_t>(u)])] =
            s.amplitudes[static_cast<std::size_t>(u)];
    return w;
}

inline StateVector pfa_scatter(const std::vector<cplx>& w, const PfaPlan& plan) {
    StateVector out = StateVector::zero(plan.dimension);
    for (i64 u = 0; u < plan.dimension; ++u)
        out.amplitudes[static_cast<std::size_t>(u)] =
            w[static_cast<std::size_t>(plan.to_tensor[static_cast<std::size_t>(u)])];
    return out;
}

inline void require_plan_match_pfa(const StateVector& s, const PfaPlan& plan) {
    s.validate();
    if (s.dimension != plan.dimension)
        throw dimension_mismatch_error("state dimension " + std::to_string(s.dimension) +
                                       " does not match plan dimension " +
                                       std::to_string(plan.dimension));
}

inline StateVector pfa_impl(const StateVector& s, const PfaPlan& plan, bool inverse,
                            TransformStats* stats) {
    require_plan_match_pfa(s, plan);
    std::vector<cplx> w = pfa_gather(s, plan);
    for (int v = plan.factor_count() - 1; v >= 0; --v)
        pfa_axis_pass(w, plan, v, inverse, stats);
    return pfa_scatter(w, plan);
}

} // namespace detail

inline StateVector fft_pfa(const StateVector& s, const PfaPlan& plan,
                           TransformStats* stats = nullptr) {
    return detail::pfa_impl(s, plan, /*inverse=*/false, stats);
}

inline StateVector ifft_pfa(const StateVector& s, const PfaPlan& plan,
                            TransformStats* stats = nullptr) {
    return detail::pfa_impl(s, plan, /*inverse=*/true, stats);
}

} // namespace oddfft

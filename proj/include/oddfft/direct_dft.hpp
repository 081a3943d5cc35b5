#pragma once

/*
 * Brute-force O(D^2) Fourier transform on Z(D): the correctness oracle
 * every fast backend is measured against, and the baseline for the
 * timing comparisons.
 *
 * Convention: forward transform is
 *     s~(J) = (1/sqrt(D)) sum_K omega_D(J K) s(K),
 * the inverse uses the conjugated kernel. The transform is unitary and
 * has order four.
 */

#include <cmath>
#include <vector>

#include "oddfft/common.hpp"
#include "oddfft/number_theory.hpp"
#include "oddfft/state_vector.hpp"

namespace oddfft {

/// Matrix element <X;J| F |X;K> = omega_D(J K) / sqrt(D).
inline cplx dft_matrix_element(const CenteredResidue& J, const CenteredResidue& K) {
    if (J.modulus != K.modulus)
        throw dimension_mismatch_error("matrix element between Z(" + std::to_string(J.modulus) +
                                       ") and Z(" + std::to_string(K.modulus) + ")");
    return omega(J.modulus, J.value * K.value) /
           std::sqrt(static_cast<double>(J.modulus));
}

namespace detail {

inline StateVector dft_direct_impl(const StateVector& s, bool inverse, TransformStats* stats) {
    s.validate();
    const i64 D = s.dimension;
    const i64 h = half_span(D);

    // Normalization folded into the kernel table, so the inner loop is
    // exactly one complex multiplication per (J, K) pair.
    std::vector<cplx> kernel(static_cast<std::size_t>(D));
    const double scale = 1.0 / std::sqrt(static_cast<double>(D));
    for (i64 e = 0; e < D; ++e)
        kernel[static_cast<std::size_t>(e)] = omega(D, inverse ? -e : e) * scale;

    StateVector out = StateVector::zero(D);
    for (i64 J = -h; J <= h; ++J) {
        // Exponent J*K mod D advances by J as K steps, so the row walks
        // the kernel table without any per-element reduction.
        const i64 step = detail::floor_mod(J, D);
        i64 e = detail::floor_mod(J * -h, D);
        cplx acc = 0.0;
        for (i64 t = 0; t < D; ++t) {
            acc += kernel[static_cast<std::size_t>(e)] * s.amplitudes[static_cast<std::size_t>(t)];
            e += step;
            if (e >= D)
                e -= D;
        }
        out.amplitudes[static_cast<std::size_t>(J + h)] = acc;
    }
    if (stats)
        stats->kernel_mults += static_cast<u64>(D) * static_cast<u64>(D);
    return out;
}

} // namespace detail

inline StateVector dft_direct(const StateVector& s, TransformStats* stats = nullptr) {
    return detail::dft_direct_impl(s, /*inverse=*/false, stats);
}

inline StateVector idft_direct(const StateVector& s, TransformStats* stats = nullptr) {
    return detail::dft_direct_impl(s, /*inverse=*/true, stats);
}

} // namespace oddfft

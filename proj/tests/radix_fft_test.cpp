#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oddfft/direct_dft.hpp"
#include "oddfft/radix_fft.hpp"

using namespace oddfft;

namespace {

double buffer_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double acc = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t)
        acc += std::norm(a[t] - b[t]);
    return std::sqrt(acc);
}

std::vector<cplx> unit_factor(i64 d, u64 seed) { return random_state(d, seed).amplitudes; }

TEST(PlanRadix, BasicsAndValidation) {
    const auto p = plan_radix(3, 2);
    EXPECT_EQ(p.dimension, 9);
    EXPECT_EQ(plan_radix(51, 2).dimension, 2601);
    EXPECT_THROW(plan_radix(4, 2), invalid_modulus_error);
    EXPECT_THROW(plan_radix(3, 0), invalid_argument_error);
    EXPECT_THROW(plan_radix(3, 64), capacity_error);

    // Exponent reduction across moduli: omega_9(3) = omega_3(1).
    EXPECT_LT(std::abs(p.roots(2).at(3) - p.roots(1).at(1)), 1e-15);

    // Construction is deterministic.
    const auto q = plan_radix(3, 2);
    EXPECT_EQ(p.kernel, q.kernel);
    EXPECT_EQ(p.roots(2).values, q.roots(2).values);
}

TEST(PlanRadix, StageKernelIsUnitary) {
    for (i64 d : {3, 5, 7}) {
        const auto p = plan_radix(d, 1);
        // Rows of the scaled kernel are orthonormal.
        for (i64 a = 0; a < d; ++a)
            for (i64 b = 0; b < d; ++b) {
                cplx acc = 0.0;
                for (i64 t = 0; t < d; ++t)
                    acc += p.kernel[static_cast<std::size_t>(a * d + t)] *
                           std::conj(p.kernel[static_cast<std::size_t>(b * d + t)]);
                EXPECT_LT(std::abs(acc - (a == b ? cplx(1.0) : cplx(0.0))), 1e-14);
            }
    }
}

TEST(FftRadix, DeltaGivesUniform) {
    const auto plan = plan_radix(3, 2);
    const auto tilde = fft_radix(StateVector::basis_state(9, 0), plan);
    for (i64 J = -4; J <= 4; ++J)
        EXPECT_LT(std::abs(tilde.at(J) - cplx(1.0 / 3.0)), 1e-13);
}

TEST(FftRadix, SingleStagePlanEqualsDirect) {
    const auto plan = plan_radix(7, 1);
    const auto s = random_state(7, 9);
    EXPECT_LT(distance(fft_radix(s, plan), dft_direct(s)), 1e-13);
}

TEST(FftRadix, MatchesDirectOracle) {
    const struct { i64 d; int n; } cases[] = {{3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}};
    for (auto [d, n] : cases) {
        const auto plan = plan_radix(d, n);
        const double bound = 1e-10 * std::sqrt(static_cast<double>(plan.dimension));
        double worst = 0.0;
        for (u64 seed = 0; seed < 20; ++seed) {
            const auto s = random_state(plan.dimension, seed);
            worst = std::max(worst, distance(fft_radix(s, plan), dft_direct(s)));
        }
        EXPECT_LT(worst, bound) << "d=" << d << " n=" << n;
    }
}

TEST(FftRadix, TwoStageClosedFormAgrees) {
    // The n = 2 transform written as one double sum over both digits:
    // s~(j0,j1) = (1/d) sum omega_{d^2}(j0 k0 + d (j1 k0 + k1 j0)) s(k0,k1).
    const i64 d = 3, D = 9, h = half_span(D);
    const auto plan = plan_radix(d, 2);
    const auto s = random_state(D, 11);
    const auto tilde = fft_radix(s, plan);
    for (i64 J = -h; J <= h; ++J) {
        const auto j = radix_encode({J, D}, d, 2).digits;
        cplx acc = 0.0;
        for (i64 K = -h; K <= h; ++K) {
            const auto k = radix_encode({K, D}, d, 2).digits;
            acc += omega(D, j[0] * k[0] + d * (j[1] * k[0] + k[1] * j[0])) * s.at(K);
        }
        acc /= static_cast<double>(d);
        EXPECT_LT(std::abs(acc - tilde.at(J)), 1e-11);
    }
}

// The per-stage factor structure, written out literally with one root
// order per already-produced digit, must reproduce the full transform
// matrix element. This pins down the twiddle grouping used by the
// staged implementation.
TEST(FftRadix, StageFactorsReproduceMatrixElement) {
    for (const auto& [d, n] : std::vector<std::pair<i64, int>>{{3, 2}, {3, 3}}) {
        const i64 D = checked_power(d, n);
        const i64 h = half_span(D);
        const double scale = 1.0 / std::sqrt(static_cast<double>(d));
        double worst = 0.0;
        for (i64 J = -h; J <= h; ++J) {
            const auto j = radix_encode({J, D}, d, n).digits;
            for (i64 K = -h; K <= h; ++K) {
                const auto k = radix_encode({K, D}, d, n).digits;
                cplx prod = 1.0;
                for (int r = 0; r < n; ++r) {
                    const i64 ks = k[static_cast<std::size_t>(n - 1 - r)];
                    cplx factor = omega(d, j[static_cast<std::size_t>(r)] * ks) * scale;
                    for (int m = 0; m < r; ++m)
                        factor *= omega(checked_power(d, r + 1 - m),
                                        j[static_cast<std::size_t>(m)] * ks);
                    prod *= factor;
                }
                const cplx full = dft_matrix_element({J, D}, {K, D});
                worst = std::max(worst, std::abs(prod - full));
            }
        }
        EXPECT_LT(worst, 1e-12) << "d=" << d << " n=" << n;
    }
}

TEST(FftRadix, EveryStagePreservesNorm) {
    for (const auto& [d, n] : std::vector<std::pair<i64, int>>{{3, 4}, {5, 2}}) {
        const auto plan = plan_radix(d, n);
        const auto s = random_state(plan.dimension, 5);
        const auto snaps = radix_stage_buffers(s, plan);
        ASSERT_EQ(snaps.size(), static_cast<std::size_t>(n) + 1);
        for (const auto& buf : snaps) {
            double norm2 = 0.0;
            for (const cplx& a : buf)
                norm2 += std::norm(a);
            EXPECT_NEAR(std::sqrt(norm2), 1.0, 1e-11);
        }
    }
}

TEST(FftRadix, RejectsDimensionMismatch) {
    const auto plan = plan_radix(3, 2);
    EXPECT_THROW(fft_radix(random_state(15, 0), plan), dimension_mismatch_error);
    EXPECT_THROW(ifft_radix(random_state(15, 0), plan), dimension_mismatch_error);
}

TEST(IfftRadix, RoundTripManySeeds) {
    for (const auto& [d, n] : std::vector<std::pair<i64, int>>{{3, 2}, {3, 3}, {5, 3}}) {
        const auto plan = plan_radix(d, n);
        for (u64 seed = 0; seed < 100; ++seed) {
            const auto s = random_state(plan.dimension, seed);
            EXPECT_LT(distance(ifft_radix(fft_radix(s, plan), plan), s), 1e-11);
        }
    }
}

TEST(IfftRadix, UniformGivesDelta) {
    const auto plan = plan_radix(5, 2);
    auto uniform = StateVector::zero(25);
    for (auto& a : uniform.amplitudes)
        a = 1.0 / 5.0;
    EXPECT_LT(distance(ifft_radix(uniform, plan), StateVector::basis_state(25, 0)), 1e-13);
}

TEST(IfftRadix, OneBackwardStepRecoversLastIntermediate) {
    const auto plan = plan_radix(3, 3);
    const auto s = random_state(27, 13);
    const auto snaps = radix_stage_buffers(s, plan);
    auto w = fft_radix(s, plan).amplitudes;
    detail::digit_reverse_permute(w, plan);
    detail::radix_inverse_stage(w, plan, plan.n, nullptr);
    EXPECT_LT(buffer_distance(w, snaps[static_cast<std::size_t>(plan.n - 1)]), 1e-11);
}

TEST(FftRadix, UnitaryWithFourthPowerIdentity) {
    for (const auto& [d, n] : std::vector<std::pair<i64, int>>{{3, 4}, {5, 2}}) {
        const auto plan = plan_radix(d, n);
        const auto s = random_state(plan.dimension, 21);
        auto t = fft_radix(s, plan);
        EXPECT_NEAR(t.norm(), 1.0, 1e-12);
        for (int reps = 0; reps < 3; ++reps)
            t = fft_radix(t, plan);
        EXPECT_LT(distance(t, s), 1e-11);
    }
}

TEST(FftRadix, MultiplicationCountsAreStructural) {
    for (const auto& [d, n] : std::vector<std::pair<i64, int>>{{3, 4}, {5, 3}, {7, 2}}) {
        const auto plan = plan_radix(d, n);
        const u64 D = static_cast<u64>(plan.dimension);
        TransformStats stats;
        fft_radix(random_state(plan.dimension, 2), plan, &stats);
        // n stages of D/d lines, each a d x d kernel sum; one twiddle
        // per entry for every stage after the first.
        EXPECT_EQ(stats.kernel_mults, static_cast<u64>(n) * D * static_cast<u64>(d));
        EXPECT_EQ(stats.twiddle_mults, static_cast<u64>(n - 1) * D);
        EXPECT_LE(stats.total(), 2 * static_cast<u64>(n) * D * static_cast<u64>(d));

        TransformStats istats;
        ifft_radix(random_state(plan.dimension, 2), plan, &istats);
        EXPECT_EQ(istats.kernel_mults, stats.kernel_mults);
        EXPECT_EQ(istats.twiddle_mults, stats.twiddle_mults);
    }
}

// --- factorized-state path --------------------------------------------------

TEST(FactorizedFft, DeltaFactorsMatchFullTransform) {
    const auto plan = plan_radix(3, 2);
    std::vector<cplx> delta(3, 0.0);
    delta[1] = 1.0; // the k = 0 position
    const std::vector<std::vector<cplx>> factors = {delta, delta};
    const auto full = fft_radix(tensor_product_state(factors, 3), plan);
    const auto split = fft_radix_factorized(factors, plan).assemble();
    EXPECT_LT(distance(split, full), 1e-12);
}

TEST(FactorizedFft, AssembledProductEqualsFullTransform) {
    for (const auto& [d, n] : std::vector<std::pair<i64, int>>{{3, 2}, {3, 3}, {5, 3}, {7, 2}}) {
        const auto plan = plan_radix(d, n);
        std::vector<std::vector<cplx>> factors;
        for (int m = 0; m < n; ++m)
            factors.push_back(unit_factor(d, static_cast<u64>(100 * d + m)));
        const auto full = fft_radix(tensor_product_state(factors, d), plan);
        const auto split = fft_radix_factorized(factors, plan).assemble();
        EXPECT_LT(distance(split, full), 1e-11) << "d=" << d << " n=" << n;
    }
}

TEST(FactorizedFft, ParallelAndSerialAreBitIdentical) {
    const auto plan = plan_radix(5, 3);
    std::vector<std::vector<cplx>> factors;
    for (int m = 0; m < 3; ++m)
        factors.push_back(unit_factor(5, static_cast<u64>(7 + m)));
    TransformStats serial_stats, parallel_stats;
    const auto serial = fft_radix_factorized(factors, plan, false, &serial_stats);
    const auto parallel = fft_radix_factorized(factors, plan, true, &parallel_stats);
    ASSERT_EQ(serial.tables.size(), parallel.tables.size());
    for (std::size_t r = 0; r < serial.tables.size(); ++r)
        EXPECT_EQ(serial.tables[r], parallel.tables[r]);
    EXPECT_EQ(serial_stats.kernel_mults, parallel_stats.kernel_mults);
    EXPECT_EQ(serial_stats.twiddle_mults, parallel_stats.twiddle_mults);
}

TEST(FactorizedFft, RejectsWrongFactorShape) {
    const auto plan = plan_radix(3, 2);
    EXPECT_THROW(fft_radix_factorized({{1.0, 0.0, 0.0}}, plan), dimension_mismatch_error);
    EXPECT_THROW(fft_radix_factorized({{1.0, 0.0}, {1.0, 0.0, 0.0}}, plan),
                 dimension_mismatch_error);
    EXPECT_THROW(tensor_product_state({{1.0, 0.0}}, 3), dimension_mismatch_error);
}

// --- product-form necessity check -------------------------------------------

TEST(FactorizationCheck, AcceptsExactProducts) {
    for (const auto& [d, n] : std::vector<std::pair<i64, int>>{{3, 2}, {3, 4}, {5, 2}}) {
        std::vector<std::vector<cplx>> factors;
        for (int m = 0; m < n; ++m)
            factors.push_back(unit_factor(d, static_cast<u64>(m + 1)));
        EXPECT_TRUE(factorization_necessary_check(tensor_product_state(factors, d), d, n));
    }
}

TEST(FactorizationCheck, RejectsMaximallyEntangledPair) {
    // Uniform superposition over equal digit pairs (k, k) at d = 3:
    // both marginals are flat, but the joint modulus is not a product.
    auto s = StateVector::zero(9);
    for (i64 t = 0; t < 3; ++t)
        s.amplitudes[static_cast<std::size_t>(t * 4)] = 1.0 / std::sqrt(3.0);
    EXPECT_FALSE(factorization_necessary_check(s, 3, 2));
}

TEST(FactorizationCheck, FlagsSmallPerturbations) {
    const std::vector<std::vector<cplx>> factors = {unit_factor(3, 2), unit_factor(3, 3)};
    auto s = tensor_product_state(factors, 3);
    const auto noise = random_state(9, 99);
    for (std::size_t t = 0; t < s.amplitudes.size(); ++t)
        s.amplitudes[t] += 1e-3 * noise.amplitudes[t];
    EXPECT_FALSE(factorization_necessary_check(s, 3, 2, 1e-6));
}

TEST(FactorizationCheck, RejectsDimensionMismatch) {
    EXPECT_THROW(factorization_necessary_check(random_state(15, 0), 3, 2),
                 dimension_mismatch_error);
}

} // namespace

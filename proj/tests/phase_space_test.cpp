#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "oddfft/phase_space.hpp"

using namespace oddfft;

namespace {

TEST(PhaseSpaceTable, ShapeAndCapacity) {
    auto t = PhaseSpaceTable::zero(15, PhaseSpaceKind::weyl);
    EXPECT_EQ(t.values.size(), 225u);
    t.at(-7, 7) = 3.0;
    EXPECT_EQ(t.values[static_cast<std::size_t>(14 * 15 + 0)], cplx(3.0));
    EXPECT_THROW(PhaseSpaceTable::zero(1501, PhaseSpaceKind::weyl), capacity_error);
}

TEST(WeylDirect, OriginEqualsNormSquared) {
    const auto s = random_state(15, 4);
    const auto t = weyl_direct(s);
    EXPECT_LT(std::abs(t.at(0, 0) - cplx(1.0)), 1e-12);
}

TEST(WeylDirect, ZeroRowIsTheAutocorrelation) {
    // Independent autocorrelation via centered-index arithmetic, no
    // shared offset tricks with the implementation.
    const i64 D = 15, h = half_span(D);
    const auto s = random_state(D, 8);
    const auto t = weyl_direct(s);
    for (i64 B = -h; B <= h; ++B) {
        cplx acc = 0.0;
        for (i64 K = -h; K <= h; ++K)
            acc += s.at(K) * std::conj(s.at(centered_reduce(B + K, D).value));
        EXPECT_LT(std::abs(t.at(0, B) - acc), 1e-12);
    }
}

TEST(WeylDirect, DeltaStateConcentratesOnZeroShift) {
    const i64 D = 15, h = half_span(D);
    const auto t = weyl_direct(StateVector::basis_state(D, 0));
    for (i64 A = -h; A <= h; ++A)
        for (i64 B = -h; B <= h; ++B)
            EXPECT_LT(std::abs(t.at(A, B) - (B == 0 ? cplx(1.0) : cplx(0.0))), 1e-13);
}

TEST(WignerDirect, RealWithExactMarginals) {
    const i64 D = 15, h = half_span(D);
    const auto s = random_state(D, 12);
    const auto t = wigner_direct(s);
    EXPECT_LT(max_imaginary(t), 1e-10);
    for (i64 B = -h; B <= h; ++B) {
        cplx col = 0.0;
        for (i64 A = -h; A <= h; ++A)
            col += t.at(A, B);
        EXPECT_LT(std::abs(col - cplx(static_cast<double>(D) * std::norm(s.at(B)))), 1e-8);
    }
}

TEST(WignerDirect, UniformStateConcentratesAtZeroMomentum) {
    const i64 D = 9, h = half_span(D);
    auto s = StateVector::zero(D);
    for (auto& a : s.amplitudes)
        a = 1.0 / 3.0;
    const auto t = wigner_direct(s);
    for (i64 A = -h; A <= h; ++A)
        for (i64 B = -h; B <= h; ++B)
            EXPECT_LT(std::abs(t.at(A, B) - (A == 0 ? cplx(1.0) : cplx(0.0))), 1e-12);
}

TEST(WeylFast, MatchesDirectAtSmallDimension) {
    const auto plan = plan_pfa({3, 5});
    for (u64 seed = 0; seed < 10; ++seed) {
        const auto s = random_state(15, seed);
        EXPECT_LT(max_entry_difference(weyl_fast(s, plan), weyl_direct(s)), 1e-10);
    }
}

TEST(WeylFast, MatchesDirectAcrossDimensions) {
    for (const auto& factors : std::vector<std::vector<i64>>{{3, 5, 7}, {9, 5, 7}}) {
        const auto plan = plan_pfa(factors);
        const auto s = random_state(plan.dimension, 19);
        const double bound = 1e-9 * std::sqrt(static_cast<double>(plan.dimension));
        EXPECT_LT(max_entry_difference(weyl_fast(s, plan), weyl_direct(s)), bound);
    }
}

TEST(WignerFast, MatchesDirectAcrossDimensions) {
    for (const auto& factors :
         std::vector<std::vector<i64>>{{3, 5}, {3, 5, 7}, {9, 5, 7}}) {
        const auto plan = plan_pfa(factors);
        const auto s = random_state(plan.dimension, 23);
        const double bound = 1e-9 * std::sqrt(static_cast<double>(plan.dimension));
        EXPECT_LT(max_entry_difference(wigner_fast(s, plan), wigner_direct(s)), bound);
    }
}

TEST(WignerFast, KeepsRealnessAndMarginals) {
    const auto plan = plan_pfa({3, 5, 7});
    const i64 D = 105, h = half_span(D);
    const auto s = random_state(D, 29);
    const auto t = wigner_fast(s, plan);
    EXPECT_LT(max_imaginary(t), 1e-9);
    for (i64 B = -h; B <= h; ++B) {
        cplx col = 0.0;
        for (i64 A = -h; A <= h; ++A)
            col += t.at(A, B);
        EXPECT_LT(std::abs(col - cplx(static_cast<double>(D) * std::norm(s.at(B)))), 1e-8);
    }
}

TEST(WeylFast, OriginStaysNormalized) {
    const auto plan = plan_pfa({3, 5, 7});
    const auto t = weyl_fast(random_state(105, 41), plan);
    EXPECT_LT(std::abs(t.at(0, 0) - cplx(1.0)), 1e-11);
}

TEST(PhaseSpace, BalancedDigitPlansAreRejected) {
    const auto plan = plan_radix(3, 2);
    const auto s = random_state(9, 0);
    EXPECT_THROW(weyl_fast(s, plan), unsupported_backend_error);
    EXPECT_THROW(wigner_fast(s, plan), unsupported_backend_error);
}

TEST(PhaseSpace, RejectsDimensionMismatch) {
    const auto plan = plan_pfa({3, 5});
    EXPECT_THROW(weyl_fast(random_state(9, 0), plan), dimension_mismatch_error);
}

TEST(PhaseSpace, GridMultiplicationCountsAreStructural) {
    for (const auto& factors : std::vector<std::vector<i64>>{{3, 5}, {3, 5, 7}}) {
        const auto plan = plan_pfa(factors);
        const u64 D = static_cast<u64>(plan.dimension);
        const auto s = random_state(plan.dimension, 2);

        TransformStats direct_stats;
        weyl_direct(s, &direct_stats);
        EXPECT_EQ(direct_stats.kernel_mults, D * D * D);

        TransformStats fast_stats;
        weyl_fast(s, plan, &fast_stats);
        u64 per_row = 0;
        for (i64 d : factors)
            per_row += D * static_cast<u64>(d);
        EXPECT_EQ(fast_stats.kernel_mults, D * per_row);

        TransformStats wigner_stats;
        wigner_fast(s, plan, &wigner_stats);
        EXPECT_EQ(wigner_stats.kernel_mults, D * per_row);
    }
    // The structural counts imply the intended ratio between the two
    // dimensions: cubic growth for direct, quadratic-times-log for fast.
    const u64 small_direct = 15ull * 15 * 15, large_direct = 105ull * 105 * 105;
    EXPECT_EQ(large_direct / small_direct, 343u);
}

TEST(PhaseSpaceCsv, FormatAndDeterminism) {
    const auto plan = plan_pfa({3, 5});
    const auto t = wigner_fast(random_state(15, 5), plan);
    std::stringstream a, b;
    write_phase_space_csv(a, t);
    write_phase_space_csv(b, t);
    EXPECT_EQ(a.str(), b.str());
    std::string header;
    std::getline(a, header);
    EXPECT_EQ(header, "A,B,real,imag");
    std::string first_row;
    std::getline(a, first_row);
    EXPECT_EQ(first_row.substr(0, 6), "-7,-7,");

    std::stringstream c;
    write_phase_space_csv(c, t, /*real_only=*/true);
    std::getline(c, header);
    EXPECT_EQ(header, "A,B,real");
}

} // namespace

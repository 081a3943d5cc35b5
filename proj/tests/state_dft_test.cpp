#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "oddfft/direct_dft.hpp"
#include "oddfft/state_vector.hpp"

using namespace oddfft;

namespace {

TEST(StateVector, ConstructionAndIndexing) {
    auto s = StateVector::zero(15);
    EXPECT_EQ(s.dimension, 15);
    EXPECT_EQ(s.amplitudes.size(), 15u);
    EXPECT_EQ(s.offset_of(-7), 0);
    EXPECT_EQ(s.offset_of(0), 7);
    EXPECT_EQ(s.offset_of(7), 14);
    EXPECT_THROW(s.offset_of(8), invalid_argument_error);
    EXPECT_THROW(s.offset_of(-8), invalid_argument_error);
    EXPECT_THROW(StateVector::zero(10), invalid_modulus_error);

    auto delta = StateVector::basis_state(9, -3);
    EXPECT_EQ(delta.at(-3), cplx(1.0));
    EXPECT_NEAR(delta.norm(), 1.0, 1e-15);
}

TEST(StateVector, NormalizeAndDistance) {
    auto s = StateVector::zero(5);
    s.at(0) = cplx(3.0, 4.0);
    EXPECT_NEAR(s.norm(), 5.0, 1e-15);
    s.normalize();
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);

    auto z = StateVector::zero(5);
    EXPECT_THROW(z.normalize(), invalid_argument_error);
    EXPECT_NEAR(distance(s, z), 1.0, 1e-15);
    EXPECT_THROW(distance(s, StateVector::zero(7)), dimension_mismatch_error);
}

TEST(RandomState, DeterministicAndNormalized) {
    const auto a = random_state(105, 42);
    const auto b = random_state(105, 42);
    EXPECT_EQ(a.amplitudes, b.amplitudes);
    for (u64 seed = 0; seed < 100; ++seed)
        EXPECT_NEAR(random_state(15, seed).norm(), 1.0, 1e-12);
}

TEST(RandomState, DistinctSeedsGiveDistinctStates) {
    const auto a = random_state(105, 1);
    const auto b = random_state(105, 2);
    EXPECT_LT(std::abs(inner_product(a, b)), 0.99);
    EXPECT_GT(distance(a, b), 1e-3);
}

TEST(StateCsv, RoundTripPreservesEveryBit) {
    const auto s = random_state(15, 7);
    std::stringstream buf;
    write_state_csv(buf, s);
    const auto back = read_state_csv(buf);
    ASSERT_EQ(back.dimension, 15);
    for (std::size_t t = 0; t < s.amplitudes.size(); ++t) {
        EXPECT_EQ(back.amplitudes[t].real(), s.amplitudes[t].real());
        EXPECT_EQ(back.amplitudes[t].imag(), s.amplitudes[t].imag());
    }
}

TEST(StateCsv, RejectsMalformedInput) {
    {
        std::stringstream buf("wrong,header,line\n0,1,0\n");
        EXPECT_THROW(read_state_csv(buf), io_error);
    }
    {
        std::stringstream buf("index,real,imag\n-1,1,0\n0,nan,0\n1,0,0\n");
        EXPECT_THROW(read_state_csv(buf), io_error);
    }
    {
        // Even row count is not a valid odd dimension.
        std::stringstream buf("index,real,imag\n0,1,0\n1,0,0\n");
        EXPECT_THROW(read_state_csv(buf), io_error);
    }
    {
        // Indices must ascend from -(D-1)/2.
        std::stringstream buf("index,real,imag\n0,1,0\n1,0,0\n2,0,0\n");
        EXPECT_THROW(read_state_csv(buf), io_error);
    }
    {
        std::stringstream buf("index,real,imag\n-1,1\n0,0,0\n1,0,0\n");
        EXPECT_THROW(read_state_csv(buf), io_error);
    }
}

TEST(MatrixElement, KnownValuesAndOrthonormality) {
    for (i64 K = -3; K <= 3; ++K)
        EXPECT_LT(std::abs(dft_matrix_element({0, 7}, {K, 7}) - cplx(1.0 / std::sqrt(7.0))),
                  1e-15);
    EXPECT_LT(std::abs(dft_matrix_element({1, 3}, {1, 3}) -
                       std::polar(1.0 / std::sqrt(3.0), 2.0 * std::numbers::pi / 3.0)),
              1e-15);
    EXPECT_THROW(dft_matrix_element({0, 3}, {0, 5}), dimension_mismatch_error);

    const i64 D = 15, h = half_span(D);
    for (i64 J = -h; J <= h; ++J)
        for (i64 Jp = -h; Jp <= h; ++Jp) {
            cplx acc = 0.0;
            for (i64 K = -h; K <= h; ++K)
                acc += dft_matrix_element({J, D}, {K, D}) *
                       std::conj(dft_matrix_element({Jp, D}, {K, D}));
            EXPECT_LT(std::abs(acc - (J == Jp ? cplx(1.0) : cplx(0.0))), 1e-13);
        }
}

TEST(DirectDft, DeltaAndUniform) {
    // Fourier of the delta at 0 is the uniform vector, and back.
    const i64 D = 9;
    const auto tilde = dft_direct(StateVector::basis_state(D, 0));
    for (i64 J = -4; J <= 4; ++J)
        EXPECT_LT(std::abs(tilde.at(J) - cplx(1.0 / 3.0)), 1e-14);
    const auto back = dft_direct(tilde);
    // F^2 is the parity operator; the delta at 0 is parity-even.
    EXPECT_LT(distance(back, StateVector::basis_state(D, 0)), 1e-13);
}

TEST(DirectDft, MatchesIndependentSummation) {
    // Second implementation from scratch: no shared kernel table, no
    // incremental exponent walk, just the defining double sum.
    const i64 D = 15, h = half_span(D);
    const auto s = random_state(D, 3);
    const auto fast = dft_direct(s);
    for (i64 J = -h; J <= h; ++J) {
        cplx acc = 0.0;
        for (i64 K = -h; K <= h; ++K)
            acc += omega(D, J * K) * s.at(K);
        acc /= std::sqrt(static_cast<double>(D));
        EXPECT_LT(std::abs(acc - fast.at(J)), 1e-12);
    }
}

TEST(DirectDft, UnitaryWithFourthPowerIdentity) {
    for (i64 D : {9, 15, 105}) {
        const auto s = random_state(D, static_cast<u64>(D));
        const auto t = dft_direct(s);
        EXPECT_NEAR(t.norm(), s.norm(), 1e-12);
        // Parseval, componentwise power sums.
        EXPECT_NEAR(t.norm_squared(), s.norm_squared(), 1e-12);
        EXPECT_LT(distance(idft_direct(t), s), 1e-12);
        const auto f4 = dft_direct(dft_direct(dft_direct(dft_direct(s))));
        EXPECT_LT(distance(f4, s), 1e-11);
    }
}

TEST(DirectDft, RoundTripManySeeds) {
    for (i64 D : {9, 15, 105})
        for (u64 seed = 0; seed < 100; ++seed) {
            const auto s = random_state(D, seed);
            EXPECT_LT(distance(idft_direct(dft_direct(s)), s), 1e-12);
        }
}

TEST(DirectDft, CountsExactlyDSquaredMultiplications) {
    for (i64 D : {9, 15, 105}) {
        TransformStats stats;
        dft_direct(random_state(D, 1), &stats);
        EXPECT_EQ(stats.kernel_mults, static_cast<u64>(D) * static_cast<u64>(D));
        EXPECT_EQ(stats.twiddle_mults, 0u);
        stats = {};
        idft_direct(random_state(D, 1), &stats);
        EXPECT_EQ(stats.total(), static_cast<u64>(D) * static_cast<u64>(D));
    }
}

} // namespace

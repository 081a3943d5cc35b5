#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace oddfft {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using cplx = std::complex<double>;

// Largest dimension a plan will agree to handle. Working buffers are
// O(D) complex doubles, so this caps them at 64 MiB.
inline constexpr i64 kMaxDimension = i64{1} << 22;

// Everything thrown by the library derives from oddfft::error, so a
// caller can catch one type at the boundary and still discriminate.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_modulus_error : error { using error::error; };
struct no_inverse_error : error { using error::error; };
struct dimension_mismatch_error : error { using error::error; };
struct coprimality_error : error { using error::error; };
struct invalid_digit_error : error { using error::error; };
struct capacity_error : error { using error::error; };
struct unsupported_backend_error : error { using error::error; };
struct invalid_argument_error : error { using error::error; };
struct io_error : error { using error::error; };

/// Complex-multiplication counters, filled in by transforms on request.
/// kernel_mults counts multiplications against a Fourier kernel table;
/// twiddle_mults counts diagonal phase and pointwise-product
/// multiplications. Additions are not counted.
struct TransformStats {
    u64 kernel_mults = 0;
    u64 twiddle_mults = 0;

    u64 total() const { return kernel_mults + twiddle_mults; }
};

} // namespace oddfft

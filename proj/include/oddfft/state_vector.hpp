#pragma once

/*
 * Dense complex state over Z(D), D odd, plus deterministic random
 * states and the CSV interchange format.
 *
 * Storage convention: amplitudes[t] holds s(J) for the centered index
 * J = t - (D-1)/2, i.e. indices run -(D-1)/2 ... (D-1)/2 from front to
 * back. This offset map is what ties the centered arithmetic to flat
 * buffers everywhere else in the library.
 */

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oddfft/common.hpp"
#include "oddfft/number_theory.hpp"

namespace oddfft {

struct StateVector {
    i64 dimension = 1;
    std::vector<cplx> amplitudes; // amplitudes[J + (D-1)/2] = s(J)

    static StateVector zero(i64 dimension) {
        require_odd_modulus(dimension);
        if (dimension > kMaxDimension)
            throw capacity_error("dimension " + std::to_string(dimension) +
                                 " exceeds the supported maximum");
        StateVector s;
        s.dimension = dimension;
        s.amplitudes.assign(static_cast<std::size_t>(dimension), cplx{});
        return s;
    }

    /// Unit vector concentrated on one centered index.
    static StateVector basis_state(i64 dimension, i64 centered_index) {
        StateVector s = zero(dimension);
        s.at(centered_index) = 1.0;
        return s;
    }

    /// Storage position of a centered index; throws when out of range.
    i64 offset_of(i64 centered_index) const {
        const i64 h = half_span(dimension);
        if (centered_index < -h || centered_index > h)
            throw invalid_argument_error("index " + std::to_string(centered_index) +
                                         " is outside the centered range of Z(" +
                                         std::to_string(dimension) + ")");
        return centered_index + h;
    }

    cplx& at(i64 centered_index) {
        return amplitudes[static_cast<std::size_t>(offset_of(centered_index))];
    }
    const cplx& at(i64 centered_index) const {
        return amplitudes[static_cast<std::size_t>(offset_of(centered_index))];
    }

    double norm_squared() const {
        double acc = 0.0;
        for (const cplx& a : amplitudes)
            acc += std::norm(a);
        return acc;
    }
    double norm() const { return std::sqrt(norm_squared()); }

    StateVector& normalize() {
        const double n = norm();
        if (!(n > 0.0))
            throw invalid_argument_error("cannot normalize a zero state");
        for (cplx& a : amplitudes)
            a /= n;
        return *this;
    }

    // Cheap structural check used at every transform entry point.
    void validate() const {
        require_odd_modulus(dimension);
        if (amplitudes.size() != static_cast<std::size_t>(dimension))
            throw dimension_mismatch_error("state holds " + std::to_string(amplitudes.size()) +
                                           " amplitudes for dimension " +
                                           std::to_string(dimension));
    }
};

inline void require_same_dimension(const StateVector& a, const StateVector& b) {
    if (a.dimension != b.dimension)
        throw dimension_mismatch_error("state dimensions differ: " +
                                       std::to_string(a.dimension) + " vs " +
                                       std::to_string(b.dimension));
}

/// L2 distance between two states of equal dimension.
inline double distance(const StateVector& a, const StateVector& b) {
    require_same_dimension(a, b);
    double acc = 0.0;
    for (std::size_t t = 0; t < a.amplitudes.size(); ++t)
        acc += std::norm(a.amplitudes[t] - b.amplitudes[t]);
    return std::sqrt(acc);
}

/// <a|b> = sum conj(a) b.
inline cplx inner_product(const StateVector& a, const StateVector& b) {
    require_same_dimension(a, b);
    cplx acc = 0.0;
    for (std::size_t t = 0; t < a.amplitudes.size(); ++t)
        acc += std::conj(a.amplitudes[t]) * b.amplitudes[t];
    return acc;
}

/// Deterministic unit-norm random state: amplitudes drawn from a
/// standard complex Gaussian, then normalized. Uses raw generator
/// words and an explicit Box-Muller step so the output is identical
/// across standard libraries for a given (dimension, seed).
inline StateVector random_state(i64 dimension, u64 seed) {
    StateVector s = StateVector::zero(dimension);
    std::mt19937_64 rng(seed);
    // 53 high bits -> (0, 1]; keeping zero out makes the log safe.
    auto unit = [&rng] { return static_cast<double>((rng() >> 11) + 1) * 0x1p-53; };
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (cplx& a : s.amplitudes) {
        const double radius = std::sqrt(-2.0 * std::log(unit()));
        const double angle = two_pi * unit();
        a = cplx(radius * std::cos(angle), radius * std::sin(angle));
    }
    return s.normalize();
}

// ---------------------------------------------------------------------------
// CSV interchange: header `index,real,imag`, one row per amplitude,
// ordered by centered index ascending.
// ---------------------------------------------------------------------------

inline void write_state_csv(std::ostream& out, const StateVector& s) {
    s.validate();
    out << "index,real,imag\n";
    out << std::setprecision(17);
    const i64 h = half_span(s.dimension);
    for (i64 J = -h; J <= h; ++J) {
        const cplx& a = s.amplitudes[static_cast<std::size_t>(J + h)];
        out << J << ',' << a.real() << ',' << a.imag() << '\n';
    }
    if (!out)
        throw io_error("failed while writing state CSV");
}

inline void write_state_csv(const std::string& path, const StateVector& s) {
    std::ofstream f(path);
    if (!f)
        throw io_error("cannot open " + path + " for writing");
    write_state_csv(f, s);
}

namespace detail {

inline double parse_csv_double(std::string_view field, const std::string& context) {
    // Leading whitespace is tolerated; from_chars itself is strict.
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
        field.remove_prefix(1);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || p != field.data() + field.size())
        throw io_error("malformed number '" + std::string(field) + "' in " + context);
    if (!std::isfinite(v))
        throw io_error("non-finite value in " + context);
    return v;
}

inline i64 parse_csv_int(std::string_view field, const std::string& context) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
        field.remove_prefix(1);
    i64 v = 0;
    const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || p != field.data() + field.size())
        throw io_error("malformed integer '" + std::string(field) + "' in " + context);
    return v;
}

inline std::vector<std::string_view> split_csv_row(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline std::string chomp(std::string line) {
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return line;
}

} // namespace detail

inline StateVector read_state_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw io_error("state CSV is empty");
    if (detail::chomp(line) != "index,real,imag")
        throw io_error("state CSV must start with header 'index,real,imag'");

    std::vector<i64> indices;
    std::vector<cplx> values;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = detail::chomp(line);
        if (line.empty())
            continue;
        const std::string ctx = "state CSV row " + std::to_string(row);
        const auto fields = detail::split_csv_row(line);
        if (fields.size() != 3)
            throw io_error(ctx + ": expected 3 fields, got " + std::to_string(fields.size()));
        indices.push_back(detail::parse_csv_int(fields[0], ctx));
        values.emplace_back(detail::parse_csv_double(fields[1], ctx),
                            detail::parse_csv_double(fields[2], ctx));
    }
    const i64 D = static_cast<i64>(values.size());
    if (D < 1 || D % 2 == 0)
        throw io_error("state CSV holds " + std::to_string(D) +
                       " rows, which is not an odd dimension");
    StateVector s = StateVector::zero(D);
    const i64 h = half_span(D);
    for (i64 t = 0; t < D; ++t) {
        if (indices[static_cast<std::size_t>(t)] != t - h)
            throw io_error("state CSV indices must ascend from " + std::to_string(-h) +
                           "; row " + std::to_string(t + 2) + " has index " +
                           std::to_string(indices[static_cast<std::size_t>(t)]));
        s.amplitudes[static_cast<std::size_t>(t)] = values[static_cast<std::size_t>(t)];
    }
    return s;
}

inline StateVector read_state_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw io_error("cannot open " + path + " for reading");
    return read_state_csv(f);
}

} // namespace oddfft

#pragma once

/*
 * Timing and operation-count harness. Two kinds of evidence are kept
 * deliberately separate:
 *
 *   - wall-clock medians (machine-dependent; the paper-style curves
 *     T/D^2 and T_f/(D ln D) are soft checks), and
 *   - instrumented multiplication counts (machine-independent; these
 *     carry the hard complexity assertions).
 *
 * All timed sections run single-threaded on a monotonic clock, median
 * of `reps` runs after one warm-up.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "oddfft/common.hpp"
#include "oddfft/direct_dft.hpp"
#include "oddfft/phase_space.hpp"
#include "oddfft/prime_factor_fft.hpp"
#include "oddfft/radix_fft.hpp"
#include "oddfft/state_vector.hpp"

namespace oddfft {

struct BenchRecord {
    i64 dimension = 0;
    std::string backend;
    double time_seconds = 0.0;        // median of reps
    u64 mult_count = 0;
    double ratio_t_over_d2 = 0.0;     // time / D^2
    double ratio_tf_over_dlogd = 0.0; // time / (D ln D)
};

namespace detail {
// Sink the result of a timed body so the work cannot be elided.
inline volatile double bench_sink = 0.0;
} // namespace detail

/// Median wall time of `body` over `reps` runs, after one untimed
/// warm-up. `body` must return a value whose `.amplitudes` or
/// `.values` front element can be folded into the sink.
template <class F>
double time_median(F&& body, int reps) {
    if (reps < 3)
        throw invalid_argument_error("repetition count must be at least 3, got " +
                                     std::to_string(reps));
    detail::bench_sink = detail::bench_sink + std::abs(body());
    std::vector<double> times(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const double probe = std::abs(body());
        const auto t1 = std::chrono::steady_clock::now();
        detail::bench_sink = detail::bench_sink + probe;
        times[static_cast<std::size_t>(r)] = std::chrono::duration<double>(t1 - t0).count();
    }
    std::sort(times.begin(), times.end());
    return times[static_cast<std::size_t>(reps) / 2];
}

namespace detail {

inline BenchRecord make_record(i64 D, std::string backend, double seconds, u64 mults) {
    BenchRecord rec;
    rec.dimension = D;
    rec.backend = std::move(backend);
    rec.time_seconds = seconds;
    rec.mult_count = mults;
    const double Dd = static_cast<double>(D);
    rec.ratio_t_over_d2 = seconds / (Dd * Dd);
    rec.ratio_tf_over_dlogd = seconds / (Dd * std::log(Dd));
    return rec;
}

} // namespace detail

/// The odd values 51, 53, ..., 101 (26 of them).
inline std::vector<i64> default_radix_sweep_d() {
    std::vector<i64> out;
    for (i64 d = 51; d <= 101; d += 2)
        out.push_back(d);
    return out;
}

/// The odd values 55, 57, ..., 101 (24 of them), to pair with d1 = 53.
inline std::vector<i64> default_pfa_sweep_d2() {
    std::vector<i64> out;
    for (i64 d = 55; d <= 101; d += 2)
        out.push_back(d);
    return out;
}

/// For each d: one seeded random vector at D = d^n, timed direct
/// transform and timed staged transform. Two records per d, direct
/// first.
inline std::vector<BenchRecord> bench_radix_sweep(const std::vector<i64>& d_values, int n,
                                                  u64 seed, int reps) {
    if (d_values.empty())
        throw invalid_argument_error("sweep needs at least one d value");
    std::vector<BenchRecord> records;
    records.reserve(2 * d_values.size());
    for (i64 d : d_values) {
        const auto plan = plan_radix(d, n); // rejects even d
        const i64 D = plan.dimension;
        const auto s = random_state(D, seed);

        TransformStats direct_stats, fast_stats;
        dft_direct(s, &direct_stats);
        fft_radix(s, plan, &fast_stats);

        const double t_direct =
            time_median([&] { return dft_direct(s).amplitudes[0].real(); }, reps);
        const double t_fast =
            time_median([&] { return fft_radix(s, plan).amplitudes[0].real(); }, reps);

        records.push_back(detail::make_record(D, "direct", t_direct, direct_stats.total()));
        records.push_back(detail::make_record(D, "radix", t_fast, fast_stats.total()));
    }
    return records;
}

/// As bench_radix_sweep, for D = d1 * d2 with the coprime-factor
/// backend. d1 stays fixed while d2 sweeps.
inline std::vector<BenchRecord> bench_pfa_sweep(i64 d1, const std::vector<i64>& d2_values,
                                                u64 seed, int reps) {
    if (d2_values.empty())
        throw invalid_argument_error("sweep needs at least one d2 value");
    std::vector<BenchRecord> records;
    records.reserve(2 * d2_values.size());
    for (i64 d2 : d2_values) {
        const auto plan = plan_pfa({d1, d2}); // rejects even or non-coprime pairs
        const i64 D = plan.dimension;
        const auto s = random_state(D, seed);

        TransformStats direct_stats, fast_stats;
        dft_direct(s, &direct_stats);
        fft_pfa(s, plan, &fast_stats);

        const double t_direct =
            time_median([&] { return dft_direct(s).amplitudes[0].real(); }, reps);
        const double t_fast =
            time_median([&] { return fft_pfa(s, plan).amplitudes[0].real(); }, reps);

        records.push_back(detail::make_record(D, "direct", t_direct, direct_stats.total()));
        records.push_back(detail::make_record(D, "pfa", t_fast, fast_stats.total()));
    }
    return records;
}

// ---------------------------------------------------------------------------
// Full-grid Weyl speedup experiment.
// ---------------------------------------------------------------------------

struct WeylSpeedup {
    std::vector<i64> factors;
    double time_direct = 0.0;
    double time_fast = 0.0;
    double speedup = 0.0;          // time_direct / time_fast
    double agreement_error = 0.0;  // max entrywise |fast - direct|
    u64 direct_mults = 0;
    u64 fast_mults = 0;
};

struct WeylBenchReport {
    i64 dimension = 0;
    i64 gate_dimension = 0;
    double gate_worst_error = 0.0;
    double gate_bound = 0.0;
    bool gate_passed = false;
    std::vector<WeylSpeedup> entries; // empty when the gate failed
};

inline std::vector<std::vector<i64>> default_weyl_factorizations() {
    return {{21, 23}, {3, 7, 23}};
}

/// Weyl full-grid timing: direct versus fast, one entry per
/// factorization. All factorizations must multiply to the same odd D.
/// A correctness gate at D = 105 (factorizations (15,7) and (3,5,7))
/// always runs first; timing is only reported when it passes. Set
/// quick_gate_only to stop after the gate.
inline WeylBenchReport bench_weyl(const std::vector<std::vector<i64>>& factorizations, u64 seed,
                                  int reps = 3, bool quick_gate_only = false) {
    if (factorizations.empty())
        throw invalid_argument_error("need at least one factorization");
    i64 D = 1;
    for (i64 f : factorizations.front())
        D *= f;
    for (const auto& factors : factorizations) {
        i64 prod = 1;
        for (i64 f : factors)
            prod *= f;
        if (prod != D)
            throw invalid_argument_error("factorizations disagree on the dimension: " +
                                         std::to_string(prod) + " vs " + std::to_string(D));
    }

    WeylBenchReport report;
    report.dimension = D;
    report.gate_dimension = 105;
    report.gate_bound = 1e-9 * std::sqrt(105.0);
    {
        const auto gate_state = random_state(105, seed);
        const auto gate_direct = weyl_direct(gate_state);
        double worst = 0.0;
        for (const auto& factors : std::vector<std::vector<i64>>{{15, 7}, {3, 5, 7}}) {
            const auto plan = plan_pfa(factors);
            worst = std::max(worst,
                             max_entry_difference(weyl_fast(gate_state, plan), gate_direct));
        }
        report.gate_worst_error = worst;
        report.gate_passed = worst <= report.gate_bound;
    }
    if (!report.gate_passed || quick_gate_only)
        return report;

    const auto s = random_state(D, seed);
    const auto direct_table = weyl_direct(s);
    const double t_direct = time_median([&] { return weyl_direct(s).values[0].real(); }, reps);
    TransformStats direct_stats;
    weyl_direct(s, &direct_stats);

    for (const auto& factors : factorizations) {
        const auto plan = plan_pfa(factors);
        WeylSpeedup entry;
        entry.factors = factors;
        entry.time_direct = t_direct;
        entry.direct_mults = direct_stats.kernel_mults;
        entry.agreement_error = max_entry_difference(weyl_fast(s, plan), direct_table);
        entry.time_fast = time_median([&] { return weyl_fast(s, plan).values[0].real(); }, reps);
        TransformStats fast_stats;
        weyl_fast(s, plan, &fast_stats);
        entry.fast_mults = fast_stats.kernel_mults;
        entry.speedup = entry.time_direct / entry.time_fast;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

// ---------------------------------------------------------------------------
// CSV and analysis helpers.
// ---------------------------------------------------------------------------

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "D,backend,time_seconds,mult_count,ratio_t_over_d2,ratio_tf_over_dlogd\n";
    out << std::setprecision(9) << std::scientific;
    for (const auto& r : records)
        out << r.dimension << ',' << r.backend << ',' << r.time_seconds << ',' << r.mult_count
            << ',' << r.ratio_t_over_d2 << ',' << r.ratio_tf_over_dlogd << '\n';
    if (!out)
        throw io_error("failed while writing bench CSV");
}

inline void write_bench_csv(const std::string& path, const std::vector<BenchRecord>& records) {
    std::ofstream f(path);
    if (!f)
        throw io_error("cannot open " + path + " for writing");
    write_bench_csv(f, records);
}

/// Least-squares slope of ln(y) against ln(x). Inputs must be
/// strictly positive and of equal length >= 2.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw invalid_argument_error("slope needs two equal-length samples of size >= 2");
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw invalid_argument_error("log-log slope requires positive samples");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    return num / den;
}

// ---------------------------------------------------------------------------
// Minimal self-contained SVG line plots (log-log axes), enough to
// mirror the ratio-versus-D figures.
// ---------------------------------------------------------------------------

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

inline void write_loglog_plot_svg(const std::string& path, const std::string& title,
                                  const std::string& x_label, const std::string& y_label,
                                  const std::vector<PlotSeries>& series) {
    if (series.empty())
        throw invalid_argument_error("plot needs at least one series");
    double lx_min = 0, lx_max = 0, ly_min = 0, ly_max = 0;
    bool first = true;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size() || s.x.empty())
            throw invalid_argument_error("plot series must be non-empty and aligned");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0))
                throw invalid_argument_error("log-log plot requires positive samples");
            const double lx = std::log10(s.x[i]), ly = std::log10(s.y[i]);
            if (first) {
                lx_min = lx_max = lx;
                ly_min = ly_max = ly;
                first = false;
            } else {
                lx_min = std::min(lx_min, lx);
                lx_max = std::max(lx_max, lx);
                ly_min = std::min(ly_min, ly);
                ly_max = std::max(ly_max, ly);
            }
        }
    }
    if (lx_max - lx_min < 1e-9) {
        lx_min -= 0.5;
        lx_max += 0.5;
    }
    if (ly_max - ly_min < 1e-9) {
        ly_min -= 0.5;
        ly_max += 0.5;
    }
    const double W = 720, H = 480, L = 80, R = 30, T = 48, B = 56;
    const auto X = [&](double v) {
        return L + (std::log10(v) - lx_min) / (lx_max - lx_min) * (W - L - R);
    };
    const auto Y = [&](double v) {
        return H - B - (std::log10(v) - ly_min) / (ly_max - ly_min) * (H - T - B);
    };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
           "font-family=\"sans-serif\">"
        << title << "</text>\n";
    // Axes box.
    svg << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
        << H - T - B << "\" fill=\"none\" stroke=\"#444\"/>\n";
    // Ticks: four per axis, evenly spaced in log coordinates.
    svg << std::setprecision(3);
    for (int t = 0; t <= 3; ++t) {
        const double fx = lx_min + (lx_max - lx_min) * t / 3.0;
        const double px = L + (W - L - R) * t / 3.0;
        svg << "<line x1=\"" << px << "\" y1=\"" << H - B << "\" x2=\"" << px << "\" y2=\""
            << H - B + 6 << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << H - B + 22
            << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
            << std::pow(10.0, fx) << "</text>\n";
        const double fy = ly_min + (ly_max - ly_min) * t / 3.0;
        const double py = H - B - (H - T - B) * t / 3.0;
        svg << "<line x1=\"" << L - 6 << "\" y1=\"" << py << "\" x2=\"" << L << "\" y2=\"" << py
            << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << L - 10 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">"
            << std::pow(10.0, fy) << "</text>\n";
    }
    svg << "<text x=\"" << W / 2 << "\" y=\"" << H - 14
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label
        << "</text>\n"
        << "<text x=\"18\" y=\"" << H / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 18 "
        << H / 2 << ")\">" << y_label << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = colors[k % 5];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            svg << X(s.x[i]) << ',' << Y(s.y[i]) << ' ';
        svg << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            svg << "<circle cx=\"" << X(s.x[i]) << "\" cy=\"" << Y(s.y[i])
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << W - R - 8 << "\" y=\"" << T + 18 + 16 * static_cast<double>(k)
            << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\""
            << color << "\">" << s.name << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream f(path);
    if (!f)
        throw io_error("cannot open " + path + " for writing");
    f << svg.str();
    if (!f)
        throw io_error("failed while writing plot SVG");
}

} // namespace oddfft

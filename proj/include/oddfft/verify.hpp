#pragma once

/*
 * Self-contained verification suite: every identity the library rests
 * on, run at deterministic seeds within a caller-set size budget, with
 * the worst observed error reported per item. This is what the CLI
 * `verify` subcommand prints; the test suite asserts the same facts
 * with finer granularity.
 */

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "oddfft/bench.hpp"
#include "oddfft/direct_dft.hpp"
#include "oddfft/number_theory.hpp"
#include "oddfft/phase_space.hpp"
#include "oddfft/prime_factor_fft.hpp"
#include "oddfft/radix_fft.hpp"
#include "oddfft/state_vector.hpp"

namespace oddfft {

struct VerifyItem {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyReport {
    i64 size_budget = 0;
    std::vector<VerifyItem> items;

    bool all_passed() const {
        for (const auto& item : items)
            if (!item.passed)
                return false;
        return true;
    }
};

namespace detail {

inline void verify_add(VerifyReport& report, std::string name, double max_error,
                       double tolerance) {
    VerifyItem item;
    item.name = std::move(name);
    item.max_error = max_error;
    item.tolerance = tolerance;
    item.passed = max_error <= tolerance;
    report.items.push_back(std::move(item));
}

} // namespace detail

inline VerifyReport verify_all(i64 size_budget = 315) {
    if (size_budget < 15)
        throw invalid_argument_error("size budget must be at least 15");
    VerifyReport report;
    report.size_budget = size_budget;

    // Integer identities: digit maps round-trip and the worked small
    // cases hold exactly. Errors count failures, tolerance is zero.
    {
        double failures = 0.0;
        for (const auto& [d, n] : std::vector<std::pair<i64, int>>{{3, 4}, {5, 3}, {7, 2}}) {
            const i64 D = checked_power(d, n);
            for (i64 J = -half_span(D); J <= half_span(D); ++J)
                if (radix_decode(radix_encode({J, D}, d, n)).value != J)
                    failures += 1.0;
        }
        if (radix_encode(centered_reduce(4, 9), 3, 2).digits != std::vector<i64>{1, 1})
            failures += 1.0;
        if (radix_encode(centered_reduce(-4, 9), 3, 2).digits != std::vector<i64>{-1, -1})
            failures += 1.0;
        if (centered_reduce(4 + 4, 9).value != -1)
            failures += 1.0;
        detail::verify_add(report, "balanced-digit round trip and worked examples", failures, 0.0);
    }
    {
        double failures = 0.0;
        const auto basis = make_crt_basis({3, 5});
        if (basis.cofactors != std::vector<i64>{5, 3} ||
            basis.cofactor_inverses != std::vector<i64>{2, 2} ||
            basis.idempotents != std::vector<i64>{10, 6})
            failures += 1.0;
        const auto j = crt_encode(centered_reduce(11, 15), basis);
        const auto jd = crt_encode_dual(centered_reduce(11, 15), basis);
        if (detail::floor_mod(j[0], 3) != 2 || detail::floor_mod(j[1], 5) != 1)
            failures += 1.0;
        if (detail::floor_mod(jd[0], 3) != detail::floor_mod(4, 3) ||
            detail::floor_mod(jd[1], 5) != detail::floor_mod(2, 5))
            failures += 1.0;
        for (const auto& factors : std::vector<std::vector<i64>>{{3, 5}, {3, 5, 7}, {21, 23}}) {
            const auto b = make_crt_basis(factors);
            for (i64 J = -half_span(b.dimension); J <= half_span(b.dimension); ++J)
                if (crt_decode(crt_encode({J, b.dimension}, b), b).value != J)
                    failures += 1.0;
        }
        detail::verify_add(report, "coprime residue maps and worked examples", failures, 0.0);
    }

    // Kernel factorizations, exhaustive over all index pairs.
    {
        double worst = 0.0;
        for (const auto& [d, n] : std::vector<std::pair<i64, int>>{{3, 2}, {3, 3}}) {
            const i64 D = checked_power(d, n);
            for (i64 J = -half_span(D); J <= half_span(D); ++J) {
                const auto j = radix_encode({J, D}, d, n);
                for (i64 K = -half_span(D); K <= half_span(D); ++K) {
                    const auto k = radix_encode({K, D}, d, n);
                    cplx prod = 1.0;
                    for (int t = 0; t < n; ++t) {
                        i64 cross = 0;
                        for (int r = 0; r <= t; ++r)
                            cross += j.digits[static_cast<std::size_t>(r)] *
                                     k.digits[static_cast<std::size_t>(t - r)];
                        prod *= omega(checked_power(d, n - t), cross);
                    }
                    worst = std::max(worst, std::abs(prod - omega(D, J * K)));
                }
            }
        }
        detail::verify_add(report, "balanced-digit kernel split (D = 9, 27)", worst, 1e-12);
    }
    {
        double worst = 0.0;
        for (const auto& factors : std::vector<std::vector<i64>>{{3, 5}, {3, 5, 7}}) {
            const auto basis = make_crt_basis(factors);
            const i64 D = basis.dimension;
            for (i64 J = -half_span(D); J <= half_span(D); ++J) {
                const auto jd = crt_encode_dual({J, D}, basis);
                for (i64 K = -half_span(D); K <= half_span(D); ++K) {
                    const auto k = crt_encode({K, D}, basis);
                    cplx prod = 1.0;
                    for (std::size_t v = 0; v < factors.size(); ++v)
                        prod *= omega(factors[v], jd[v] * k[v]);
                    worst = std::max(worst, std::abs(prod - omega(D, J * K)));
                }
            }
        }
        detail::verify_add(report, "coprime-factor kernel split (D = 15, 105)", worst, 1e-12);
    }

    // Direct oracle behaves like a unitary of order four.
    {
        double worst = 0.0;
        const i64 D = std::min<i64>(105, size_budget);
        for (u64 seed = 0; seed < 5; ++seed) {
            const auto s = random_state(D, seed);
            const auto t = dft_direct(s);
            worst = std::max(worst, std::abs(t.norm() - 1.0));
            worst = std::max(worst, distance(idft_direct(t), s));
        }
        detail::verify_add(report, "direct transform unitarity and inverse", worst, 1e-12);
    }
    {
        const auto s = random_state(15, 3);
        const auto f4 = dft_direct(dft_direct(dft_direct(dft_direct(s))));
        detail::verify_add(report, "direct transform has order four", distance(f4, s), 1e-11);
    }

    // Fast backends against the direct oracle, error scaled by sqrt(D).
    {
        double worst = 0.0;
        for (const auto& [d, n] : std::vector<std::pair<i64, int>>{
                 {3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}}) {
            const i64 D = checked_power(d, n);
            if (D > size_budget)
                continue;
            const auto plan = plan_radix(d, n);
            for (u64 seed = 0; seed < 5; ++seed) {
                const auto s = random_state(D, seed);
                worst = std::max(worst, distance(fft_radix(s, plan), dft_direct(s)) /
                                            std::sqrt(static_cast<double>(D)));
            }
        }
        detail::verify_add(report, "staged balanced-digit transform vs oracle (per sqrt(D))",
                           worst, 1e-10);
    }
    {
        double worst = 0.0;
        for (const auto& factors : std::vector<std::vector<i64>>{
                 {3, 5}, {3, 7}, {5, 7}, {5, 9}, {3, 5, 7}, {5, 7, 11}, {3, 7, 23}}) {
            const auto plan = plan_pfa(factors);
            if (plan.dimension > size_budget)
                continue;
            for (u64 seed = 0; seed < 5; ++seed) {
                const auto s = random_state(plan.dimension, seed);
                worst = std::max(worst, distance(fft_pfa(s, plan), dft_direct(s)) /
                                            std::sqrt(static_cast<double>(plan.dimension)));
            }
        }
        detail::verify_add(report, "coprime-factor transform vs oracle (per sqrt(D))", worst,
                           1e-10);
    }
    {
        double worst = 0.0;
        {
            const auto plan = plan_radix(3, 4);
            const auto s = random_state(81, 9);
            worst = std::max(worst, distance(ifft_radix(fft_radix(s, plan), plan), s));
        }
        {
            const auto plan = plan_pfa({3, 5, 7});
            const auto s = random_state(105, 9);
            worst = std::max(worst, distance(ifft_pfa(fft_pfa(s, plan), plan), s));
        }
        detail::verify_add(report, "fast-backend round trips", worst, 1e-11);
    }

    // Phase-space functions: fast vs direct, realness, marginals.
    {
        double worst_weyl = 0.0, worst_wigner = 0.0, worst_imag = 0.0, worst_marginal = 0.0,
               worst_origin = 0.0;
        for (const auto& factors :
             std::vector<std::vector<i64>>{{3, 5}, {3, 5, 7}, {9, 5, 7}}) {
            const auto plan = plan_pfa(factors);
            const i64 D = plan.dimension;
            if (D > size_budget)
                continue;
            const auto s = random_state(D, 17);
            const double root_d = std::sqrt(static_cast<double>(D));
            const auto wd = weyl_direct(s);
            const auto wf = weyl_fast(s, plan);
            worst_weyl = std::max(worst_weyl, max_entry_difference(wf, wd) / root_d);
            worst_origin = std::max(worst_origin, std::abs(wf.at(0, 0) - cplx(1.0)));
            const auto gd = wigner_direct(s);
            const auto gf = wigner_fast(s, plan);
            worst_wigner = std::max(worst_wigner, max_entry_difference(gf, gd) / root_d);
            worst_imag = std::max(worst_imag, max_imaginary(gf));
            const i64 h = half_span(D);
            for (i64 B = -h; B <= h; ++B) {
                cplx col = 0.0;
                for (i64 A = -h; A <= h; ++A)
                    col += gf.at(A, B);
                worst_marginal = std::max(
                    worst_marginal,
                    std::abs(col - cplx(static_cast<double>(D) * std::norm(s.at(B)))));
            }
        }
        detail::verify_add(report, "Weyl fast vs direct (per sqrt(D))", worst_weyl, 1e-9);
        detail::verify_add(report, "Wigner fast vs direct (per sqrt(D))", worst_wigner, 1e-9);
        detail::verify_add(report, "Wigner grid realness", worst_imag, 1e-9);
        detail::verify_add(report, "Wigner position marginals", worst_marginal, 1e-8);
        detail::verify_add(report, "Weyl origin normalization", worst_origin, 1e-11);
    }

    // Multiplication-count contracts, exact.
    {
        double failures = 0.0;
        {
            TransformStats stats;
            dft_direct(random_state(105, 1), &stats);
            if (stats.total() != 105ull * 105ull)
                failures += 1.0;
        }
        {
            const auto plan = plan_radix(5, 3);
            TransformStats stats;
            fft_radix(random_state(125, 1), plan, &stats);
            if (stats.kernel_mults != 3ull * 125 * 5 || stats.twiddle_mults != 2ull * 125)
                failures += 1.0;
        }
        {
            const auto plan = plan_pfa({3, 5, 7});
            TransformStats stats;
            fft_pfa(random_state(105, 1), plan, &stats);
            if (stats.kernel_mults != 105ull * (3 + 5 + 7) || stats.twiddle_mults != 0)
                failures += 1.0;
        }
        detail::verify_add(report, "multiplication-count contracts", failures, 0.0);
    }

    return report;
}

inline void print_verify_report(std::ostream& out, const VerifyReport& report) {
    out << "verification suite (size budget " << report.size_budget << ")\n";
    for (const auto& item : report.items) {
        out << (item.passed ? "  PASS  " : "  FAIL  ") << std::left << std::setw(56) << item.name
            << std::right << "  max error " << std::scientific << std::setprecision(3)
            << item.max_error << "  (tolerance " << item.tolerance << ")\n"
            << std::defaultfloat;
    }
    out << (report.all_passed() ? "all identities hold\n" : "SOME IDENTITIES FAILED\n");
}

} // namespace oddfft

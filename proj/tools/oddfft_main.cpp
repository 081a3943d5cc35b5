// Command-line front end for the odd-dimension transform library.
//
// Subcommands:
//   fft     transform a state (or a seeded random one) with a chosen backend
//   weyl    Weyl phase-space function of a state on the full grid
//   wigner  Wigner phase-space function of a state on the full grid
//   bench   timing sweeps comparing fast backends against the direct oracle
//   verify  run the built-in identity suite and report worst errors
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oddfft/oddfft.hpp"

namespace {

using namespace oddfft;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Output paths resolve against --out-dir when given, else the
// ODDFFT_OUT_DIR environment variable, else the working directory.
std::filesystem::path resolve_output(const std::string& name, const std::string& out_dir) {
    std::filesystem::path p(name);
    if (p.is_absolute())
        return p;
    if (!out_dir.empty())
        return std::filesystem::path(out_dir) / p;
    if (const char* env = std::getenv("ODDFFT_OUT_DIR"); env != nullptr && *env != '\0')
        return std::filesystem::path(env) / p;
    return p;
}

StateVector load_or_random(const std::string& in_path, i64 dimension, u64 seed,
                           const char* what) {
    if (!in_path.empty()) {
        StateVector s = read_state_csv(in_path);
        if (dimension != 0 && s.dimension != dimension)
            throw invalid_argument_error(std::string(what) + ": input state has dimension " +
                                         std::to_string(s.dimension) +
                                         " but the command requested " +
                                         std::to_string(dimension));
        return s;
    }
    if (dimension == 0)
        throw invalid_argument_error(std::string(what) +
                                     ": provide --in, or a dimension for a seeded random state");
    return random_state(dimension, seed);
}

std::vector<i64> choose_factors(i64 dimension, const std::vector<i64>& requested) {
    if (!requested.empty())
        return requested;
    return coprime_factorization(dimension);
}

int run_fft(const std::string& backend, i64 d, int n, std::vector<i64> factors,
            const std::string& in_path, const std::string& out_path, const std::string& out_dir,
            u64 seed, bool inverse) {
    StateVector s{0, {}};
    if (backend == "radix") {
        if (d == 0 || n == 0)
            throw invalid_argument_error("fft --backend radix needs --d and --n");
        const auto plan = plan_radix(d, n);
        s = load_or_random(in_path, plan.dimension, seed, "fft");
        TransformStats stats;
        s = inverse ? ifft_radix(s, plan, &stats) : fft_radix(s, plan, &stats);
        std::cout << "radix backend: D = " << plan.dimension << " = " << d << "^" << n
                  << ", kernel multiplications " << stats.kernel_mults << ", twiddle "
                  << stats.twiddle_mults << "\n";
    } else if (backend == "pfa") {
        i64 dim = d;
        if (!factors.empty()) {
            dim = 1;
            for (i64 f : factors)
                dim *= f;
        }
        if (dim == 0 && in_path.empty())
            throw invalid_argument_error("fft --backend pfa needs --factors, --d, or --in");
        if (dim == 0)
            dim = read_state_csv(in_path).dimension; // factor the input's dimension
        const auto plan = plan_pfa(choose_factors(dim, factors));
        s = load_or_random(in_path, plan.dimension, seed, "fft");
        TransformStats stats;
        s = inverse ? ifft_pfa(s, plan, &stats) : fft_pfa(s, plan, &stats);
        std::cout << "coprime-factor backend: D = " << plan.dimension << ", factors";
        for (i64 f : plan.basis.factors)
            std::cout << " " << f;
        std::cout << ", kernel multiplications " << stats.kernel_mults << "\n";
    } else if (backend == "direct") {
        if (d == 0 && in_path.empty())
            throw invalid_argument_error("fft --backend direct needs --d or --in");
        s = load_or_random(in_path, d, seed, "fft");
        TransformStats stats;
        s = inverse ? idft_direct(s, &stats) : dft_direct(s, &stats);
        std::cout << "direct backend: D = " << s.dimension << ", multiplications "
                  << stats.total() << "\n";
    } else {
        throw invalid_argument_error("unknown backend '" + backend +
                                     "' (expected radix, pfa, or direct)");
    }
    if (!out_path.empty()) {
        const auto path = resolve_output(out_path, out_dir);
        write_state_csv(path.string(), s);
        std::cout << "wrote " << path.string() << "\n";
    }
    return kExitOk;
}

int run_phase_space(PhaseSpaceKind kind, std::vector<i64> factors, const std::string& in_path,
                    const std::string& out_path, const std::string& out_dir, u64 seed,
                    bool quick) {
    const char* name = kind == PhaseSpaceKind::weyl ? "weyl" : "wigner";
    StateVector s{0, {}};
    if (quick) {
        // Self-contained demonstration at D = 105: build a seeded
        // state, compare the fast grid against the direct one, and
        // report the worst deviation before writing the fast result.
        s = random_state(105, seed);
        if (factors.empty())
            factors = {3, 5, 7};
    } else {
        if (in_path.empty())
            throw invalid_argument_error(std::string(name) + ": provide --in (or use --quick)");
        s = read_state_csv(in_path);
        factors = choose_factors(s.dimension, factors);
    }
    const auto plan = plan_pfa(factors);
    if (plan.dimension != s.dimension)
        throw invalid_argument_error(std::string(name) + ": factors multiply to " +
                                     std::to_string(plan.dimension) +
                                     " but the state has dimension " +
                                     std::to_string(s.dimension));

    TransformStats stats;
    const auto fast = kind == PhaseSpaceKind::weyl ? weyl_fast(s, plan, &stats)
                                                   : wigner_fast(s, plan, &stats);
    std::cout << name << ": D = " << plan.dimension << ", kernel multiplications "
              << stats.kernel_mults << ", twiddle " << stats.twiddle_mults << "\n";

    if (quick) {
        const auto direct = kind == PhaseSpaceKind::weyl ? weyl_direct(s) : wigner_direct(s);
        const double err = max_entry_difference(fast, direct);
        const double bound = 1e-9 * std::sqrt(static_cast<double>(plan.dimension));
        std::cout << "fast vs direct worst deviation " << err << " (bound " << bound << ")\n";
        if (err > bound) {
            std::cerr << name << ": fast grid disagrees with the direct oracle\n";
            return kExitVerifyFailed;
        }
    }

    if (kind == PhaseSpaceKind::wigner) {
        const double im = max_imaginary(fast);
        const double bound = 1e-9 * std::sqrt(static_cast<double>(plan.dimension));
        if (im > bound) {
            std::cerr << "wigner: grid has imaginary residue " << im << " above " << bound
                      << "\n";
            return kExitVerifyFailed;
        }
    }

    if (!out_path.empty()) {
        const auto path = resolve_output(out_path, out_dir);
        // Wigner grids are real; drop the redundant column.
        write_phase_space_csv(path.string(), fast, kind == PhaseSpaceKind::wigner);
        std::cout << "wrote " << path.string() << "\n";
    }
    return kExitOk;
}

int run_bench(const std::string& suite, u64 seed, int reps, const std::string& out_dir,
              bool plots) {
    const auto out = [&](const std::string& name) {
        return resolve_output(name, out_dir).string();
    };
    if (suite == "radix") {
        const auto records = bench_radix_sweep(default_radix_sweep_d(), 2, seed, reps);
        write_bench_csv(out("bench_radix.csv"), records);
        std::cout << "wrote " << out("bench_radix.csv") << " (" << records.size()
                  << " records)\n";
        std::vector<double> dims, direct_t, fast_t;
        for (const auto& r : records)
            if (r.backend == "direct") {
                dims.push_back(static_cast<double>(r.dimension));
                direct_t.push_back(r.time_seconds);
            } else {
                fast_t.push_back(r.time_seconds);
            }
        std::cout << "direct time log-log slope " << loglog_slope(dims, direct_t) << "\n";
        if (plots) {
            write_loglog_plot_svg(out("bench_radix.svg"),
                                  "transform time vs dimension (balanced-digit backend)", "D",
                                  "seconds",
                                  {{"direct", dims, direct_t}, {"radix", dims, fast_t}});
            std::cout << "wrote " << out("bench_radix.svg") << "\n";
        }
    } else if (suite == "pfa") {
        const auto records = bench_pfa_sweep(53, default_pfa_sweep_d2(), seed, reps);
        write_bench_csv(out("bench_pfa.csv"), records);
        std::cout << "wrote " << out("bench_pfa.csv") << " (" << records.size()
                  << " records)\n";
        if (plots) {
            std::vector<double> dims, direct_t, fast_t;
            for (const auto& r : records)
                if (r.backend == "direct") {
                    dims.push_back(static_cast<double>(r.dimension));
                    direct_t.push_back(r.time_seconds);
                } else {
                    fast_t.push_back(r.time_seconds);
                }
            write_loglog_plot_svg(out("bench_pfa.svg"),
                                  "transform time vs dimension (coprime-factor backend)", "D",
                                  "seconds",
                                  {{"direct", dims, direct_t}, {"pfa", dims, fast_t}});
            std::cout << "wrote " << out("bench_pfa.svg") << "\n";
        }
    } else if (suite == "weyl") {
        const auto report = bench_weyl(default_weyl_factorizations(), seed, reps);
        std::cout << "quick gate at D = " << report.gate_dimension << ": worst error "
                  << report.gate_worst_error << " (bound " << report.gate_bound << ") "
                  << (report.gate_passed ? "passed" : "FAILED") << "\n";
        if (!report.gate_passed)
            return kExitVerifyFailed;
        for (const auto& e : report.entries) {
            std::cout << "D = " << report.dimension << ", factors";
            for (i64 f : e.factors)
                std::cout << " " << f;
            std::cout << ": direct " << e.time_direct << " s, fast " << e.time_fast
                      << " s, speedup " << e.speedup << ", agreement error "
                      << e.agreement_error << "\n";
        }
    } else {
        throw invalid_argument_error("unknown bench suite '" + suite +
                                     "' (expected radix, pfa, or weyl)");
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fast Fourier transforms and phase-space functions for odd dimensions"};
    app.require_subcommand(1);

    // fft
    std::string fft_backend = "radix";
    i64 fft_d = 0;
    int fft_n = 0;
    std::vector<i64> fft_factors;
    std::string fft_in, fft_out, fft_out_dir;
    u64 fft_seed = 1;
    bool fft_inverse = false;
    auto* fft = app.add_subcommand("fft", "transform a state vector");
    fft->add_option("--backend", fft_backend, "radix, pfa, or direct")
        ->check(CLI::IsMember({"radix", "pfa", "direct"}));
    fft->add_option("--d", fft_d, "radix base (radix), or dimension (pfa/direct)");
    fft->add_option("--n", fft_n, "number of radix stages");
    fft->add_option("--factors", fft_factors, "pairwise coprime odd factors (pfa)");
    fft->add_option("--in", fft_in, "input state CSV (index,real,imag)");
    fft->add_option("--out", fft_out, "output state CSV");
    fft->add_option("--out-dir", fft_out_dir, "directory for outputs");
    fft->add_option("--seed", fft_seed, "seed for the random state when --in is absent");
    fft->add_flag("--inverse", fft_inverse, "apply the inverse transform");

    // weyl / wigner share their option set
    struct PhaseOpts {
        std::vector<i64> factors;
        std::string in, out, out_dir;
        u64 seed = 1;
        bool quick = false;
    };
    PhaseOpts weyl_opts, wigner_opts;
    auto add_phase = [&app](const char* name, const char* help, PhaseOpts& o) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("--factors", o.factors, "pairwise coprime odd factors of D");
        cmd->add_option("--in", o.in, "input state CSV (index,real,imag)");
        cmd->add_option("--out", o.out, "output grid CSV");
        cmd->add_option("--out-dir", o.out_dir, "directory for outputs");
        cmd->add_option("--seed", o.seed, "seed for the --quick demonstration state");
        cmd->add_flag("--quick", o.quick,
                      "self-contained D = 105 demonstration checked against the direct oracle");
        return cmd;
    };
    auto* weyl = add_phase("weyl", "Weyl phase-space function on the full grid", weyl_opts);
    auto* wigner =
        add_phase("wigner", "Wigner phase-space function on the full grid", wigner_opts);

    // bench
    std::string bench_suite = "radix";
    u64 bench_seed = 7;
    int bench_reps = 5;
    std::string bench_out_dir;
    bool bench_plots = false;
    auto* bench = app.add_subcommand("bench", "timing sweeps against the direct oracle");
    bench->add_option("--suite", bench_suite, "radix, pfa, or weyl")
        ->check(CLI::IsMember({"radix", "pfa", "weyl"}));
    bench->add_option("--seed", bench_seed, "seed for the benchmark states");
    bench->add_option("--reps", bench_reps, "timing repetitions per point (median reported)")
        ->check(CLI::Range(3, 1000));
    bench->add_option("--out-dir", bench_out_dir, "directory for CSV/SVG outputs");
    bench->add_flag("--plots", bench_plots, "also write log-log SVG plots");

    // verify
    i64 verify_budget = 315;
    auto* verify = app.add_subcommand("verify", "run the built-in identity suite");
    verify->add_option("--budget", verify_budget, "largest dimension exercised");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (fft->parsed())
            return run_fft(fft_backend, fft_d, fft_n, fft_factors, fft_in, fft_out, fft_out_dir,
                           fft_seed, fft_inverse);
        if (weyl->parsed())
            return run_phase_space(PhaseSpaceKind::weyl, weyl_opts.factors, weyl_opts.in,
                                   weyl_opts.out, weyl_opts.out_dir, weyl_opts.seed,
                                   weyl_opts.quick);
        if (wigner->parsed())
            return run_phase_space(PhaseSpaceKind::wigner, wigner_opts.factors, wigner_opts.in,
                                   wigner_opts.out, wigner_opts.out_dir, wigner_opts.seed,
                                   wigner_opts.quick);
        if (bench->parsed())
            return run_bench(bench_suite, bench_seed, bench_reps, bench_out_dir, bench_plots);
        if (verify->parsed()) {
            const auto report = verify_all(verify_budget);
            print_verify_report(std::cout, report);
            return report.all_passed() ? kExitOk : kExitVerifyFailed;
        }
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const error& e) {
        // Library validation errors reached from the command line are
        // usage errors; genuine verification failures return their
        // code explicitly above.
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

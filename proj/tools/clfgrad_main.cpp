// clfgrad: compute and certify common quadratic Lyapunov functions for
// families of Hurwitz matrices via sequential gradient correction steps.
//
// Subcommands:
//   solve     run the iteration on a problem file, write a solution file
//   verify    check a candidate P against every constraint of a problem
//   generate  emit a random upper-triangular interval problem
//   bench     generate/solve vertex families and report iteration statistics
//
// Exit codes: 0 solved/feasible, 1 input error, 2 not solved, 3 infeasible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clfgrad/errors.hpp"
#include "clfgrad/families.hpp"
#include "clfgrad/json_io.hpp"
#include "clfgrad/rng.hpp"
#include "clfgrad/solver.hpp"
#include "clfgrad/symmetric_matrix.hpp"
#include "clfgrad/verify.hpp"

namespace {

using namespace clfgrad;

struct SolveOpts {
    std::string problem;
    double alpha = 1.0;
    double r = 1.0;
    std::string functional = "sqnorm";
    std::string variant = "plain";
    std::string scheduler;  // empty = pick per family kind
    std::uint64_t seed = 0;
    long max_iters = 1'000'000;
    double tol = 0.0;
    std::string p0;
    std::string trace;
    std::string out;
};

struct VerifyOpts {
    std::string problem;
    std::string candidate;
};

struct GenerateOpts {
    int n = 4;
    std::string kind = "triangular-interval";
    double diag_lo = -2.0;
    double diag_hi = -1.0;
    double halfwidth = 0.25;
    bool interval_diagonal = false;
    std::uint64_t seed = 0;
    std::string out;
};

struct BenchOpts {
    int n = 4;
    int trials = 10;
    std::uint64_t seed = 0;
    long max_iters = 750'000;
    std::string out;
};

// Defaults for bench problem generation: all upper-triangle entries
// interval-valued so an n=4 family has 2^10 vertices and n=5 has 2^15.
constexpr double kBenchDiagLo = -2.0;
constexpr double kBenchDiagHi = -1.0;
constexpr double kBenchHalfwidth = 0.25;

double median(std::vector<double> xs) {
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

std::optional<Certificate> try_certify(const SymMatrix& p, const ProblemSpec& problem) {
    if (const auto* finite = std::get_if<FiniteFamily>(&problem.family())) {
        return verify_finite(p, *finite, problem.q());
    }
    const auto& box = std::get<IntervalFamily>(problem.family());
    if (box.free_entry_count() > kMaxFreeEntries) return std::nullopt;
    return verify_interval_via_vertices(p, box, problem.q());
}

int run_solve(const SolveOpts& opts) {
    ProblemSpec problem = io::load_problem(opts.problem);
    const bool is_finite = std::holds_alternative<FiniteFamily>(problem.family());

    SolverConfig config;
    config.alpha = opts.alpha;
    config.r = opts.r;
    config.functional = io::functional_from_string(opts.functional);
    config.variant = io::variant_from_string(opts.variant);
    if (opts.scheduler.empty()) {
        config.scheduler = is_finite ? SchedulerKind::RoundRobin : SchedulerKind::Randomized;
    } else {
        config.scheduler = io::scheduler_from_string(opts.scheduler);
    }
    config.seed = opts.seed;
    config.max_iters = opts.max_iters;
    config.feasibility_tol = opts.tol;
    config.record_trace = !opts.trace.empty();
    if (!opts.p0.empty()) config.p0 = SymMatrix(io::load_candidate_matrix(opts.p0));

    const SolverOutcome outcome = run(problem, config);

    if (!opts.trace.empty()) {
        std::ofstream ts(opts.trace, std::ios::binary);
        if (!ts) throw std::runtime_error("cannot open " + opts.trace + " for writing");
        for (const auto& rec : outcome.trace) ts << io::trace_line(rec) << "\n";
    }

    std::optional<Certificate> cert = outcome.certificate;
    if (!cert) cert = try_certify(outcome.p_final, problem);

    io::SolutionData data;
    data.status = io::to_string(outcome.status);
    data.p = outcome.p_final.mat();
    data.iterations = outcome.iterations;
    data.corrections = outcome.corrections;
    if (cert) data.worst_residual = cert->worst_residual;
    data.lambda_min_p = cert ? cert->lambda_min_p : lambda_min(outcome.p_final);
    data.alpha = config.alpha;
    data.r = config.r;
    data.functional = io::to_string(config.functional);
    data.variant = io::to_string(config.variant);
    data.scheduler = io::to_string(config.scheduler);
    data.seed = config.seed;
    data.max_iters = config.max_iters;
    data.feasibility_tol = config.feasibility_tol;

    if (opts.out.empty()) {
        std::cout << io::solution_to_json(data).dump(2) << "\n";
    } else {
        io::save_solution(opts.out, data);
        std::cout << "status " << data.status << ", iterations " << data.iterations
                  << ", corrections " << data.corrections << ", wrote " << opts.out << "\n";
    }
    return outcome.status == SolveStatus::Solved ? 0 : 2;
}

int run_verify(const VerifyOpts& opts) {
    ProblemSpec problem = io::load_problem(opts.problem);
    const Eigen::MatrixXd pm = io::load_candidate_matrix(opts.candidate);
    if (pm.rows() != problem.dim() || pm.cols() != problem.dim()) {
        throw DimensionMismatch("candidate P is " + std::to_string(pm.rows()) + "x" +
                                std::to_string(pm.cols()) + " but the problem has n = " +
                                std::to_string(problem.dim()));
    }
    const SymMatrix p(pm);

    Certificate cert = [&] {
        if (const auto* finite = std::get_if<FiniteFamily>(&problem.family())) {
            return verify_finite(p, *finite, problem.q());
        }
        return verify_interval_via_vertices(p, std::get<IntervalFamily>(problem.family()),
                                            problem.q());
    }();

    std::cout.precision(12);
    for (std::size_t i = 0; i < cert.residuals.size(); ++i) {
        std::cout << "constraint " << i << ": residual " << cert.residuals[i] << "\n";
    }
    std::cout << "worst_residual " << cert.worst_residual << "\n"
              << "lambda_min_P " << cert.lambda_min_p << "\n"
              << "cert_tol " << cert.cert_tol << "\n"
              << (cert.feasible ? "feasible" : "infeasible") << "\n";
    return cert.feasible ? 0 : 3;
}

int run_generate(const GenerateOpts& opts) {
    if (opts.kind != "triangular-interval") {
        throw std::invalid_argument("unknown kind '" + opts.kind +
                                    "' (expected triangular-interval)");
    }
    TriangularIntervalParams params;
    params.n = opts.n;
    params.diag_lo = opts.diag_lo;
    params.diag_hi = opts.diag_hi;
    params.halfwidth = opts.halfwidth;
    params.interval_diagonal = opts.interval_diagonal;

    Rng rng(opts.seed);
    const IntervalFamily box = generate_triangular_interval(params, rng);
    const MatrixFamily family(box);
    if (opts.out.empty()) {
        std::cout << io::problem_to_json(family, std::nullopt).dump(2) << "\n";
    } else {
        io::save_problem(opts.out, family, std::nullopt);
        std::cout << "wrote " << opts.out << " (" << box.free_entry_count()
                  << " interval entries)\n";
    }
    return 0;
}

int run_bench(const BenchOpts& opts) {
    if (opts.n != 4 && opts.n != 5) throw std::invalid_argument("bench supports --n 4 or 5");
    if (opts.trials < 0) throw std::invalid_argument("--trials must be >= 0");

    TriangularIntervalParams params;
    params.n = opts.n;
    params.diag_lo = kBenchDiagLo;
    params.diag_hi = kBenchDiagHi;
    params.halfwidth = kBenchHalfwidth;
    params.interval_diagonal = true;

    nlohmann::json per_trial = nlohmann::json::array();
    std::vector<double> iter_counts, fractions;
    int solved = 0;
    std::size_t vertex_count = 0;

    std::cout << "trial  status             iterations  corrections  corr_frac  seconds\n";
    for (int t = 0; t < opts.trials; ++t) {
        const std::uint64_t trial_seed = opts.seed + static_cast<std::uint64_t>(t);
        Rng rng(trial_seed);
        const IntervalFamily box = generate_triangular_interval(params, rng);
        FiniteFamily vertices = enumerate_vertices(box);
        vertex_count = vertices.size();
        ProblemSpec problem(MatrixFamily(std::move(vertices)),
                            SymMatrix::identity(opts.n));

        SolverConfig config;
        config.scheduler = SchedulerKind::RoundRobin;
        config.seed = trial_seed;
        config.max_iters = opts.max_iters;

        const auto t0 = std::chrono::steady_clock::now();
        const SolverOutcome outcome = run(problem, config);
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();

        const double frac =
            outcome.iterations > 0
                ? static_cast<double>(outcome.corrections) / static_cast<double>(outcome.iterations)
                : 0.0;
        if (outcome.status == SolveStatus::Solved) ++solved;
        iter_counts.push_back(static_cast<double>(outcome.iterations));
        fractions.push_back(frac);

        char row[160];
        std::snprintf(row, sizeof(row), "%5d  %-17s  %10ld  %11ld  %9.4f  %7.3f\n", t,
                      io::to_string(outcome.status).c_str(), outcome.iterations,
                      outcome.corrections, frac, secs);
        std::cout << row;

        per_trial.push_back({{"trial", t},
                             {"seed", trial_seed},
                             {"status", io::to_string(outcome.status)},
                             {"iterations", outcome.iterations},
                             {"corrections", outcome.corrections},
                             {"correction_fraction", frac},
                             {"seconds", secs}});
    }

    const double solved_rate =
        opts.trials > 0 ? static_cast<double>(solved) / opts.trials : 1.0;
    std::cout << "trials " << opts.trials << ", vertices per family " << vertex_count
              << ", solved " << solved << "/" << opts.trials << "\n";
    if (opts.trials > 0) {
        std::cout << "median iterations " << median(iter_counts)
                  << ", median correction fraction " << median(fractions) << "\n";
    }

    if (!opts.out.empty()) {
        nlohmann::json summary{{"schema_version", io::kSchemaVersion},
                               {"n", opts.n},
                               {"trials", opts.trials},
                               {"seed", opts.seed},
                               {"max_iters", opts.max_iters},
                               {"vertices", vertex_count},
                               {"solved", solved},
                               {"solved_rate", solved_rate},
                               {"per_trial", per_trial}};
        if (opts.trials > 0) {
            summary["median_iterations"] = median(iter_counts);
            summary["median_correction_fraction"] = median(fractions);
        }
        std::ofstream out(opts.out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + opts.out + " for writing");
        out << summary.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Common quadratic Lyapunov functions via sequential gradient corrections"};
    app.require_subcommand(1);

    SolveOpts solve_opts;
    auto* solve = app.add_subcommand("solve", "Run the gradient iteration on a problem file");
    solve->add_option("problem", solve_opts.problem, "Problem file (JSON)")->required();
    solve->add_option("--alpha", solve_opts.alpha, "Overshoot interpolation in [0,1]")
        ->capture_default_str();
    solve->add_option("--r", solve_opts.r, "Target ball radius r > 0")->capture_default_str();
    solve->add_option("--functional", solve_opts.functional, "Infeasibility measure")
        ->check(CLI::IsMember({"sqnorm", "lambdamax"}))
        ->capture_default_str();
    solve->add_option("--variant", solve_opts.variant, "Iterate update rule")
        ->check(CLI::IsMember({"plain", "projected"}))
        ->capture_default_str();
    solve->add_option("--scheduler", solve_opts.scheduler,
                      "Constraint scheduler (default: roundrobin for finite families, "
                      "random for interval families)")
        ->check(CLI::IsMember({"roundrobin", "random"}));
    solve->add_option("--seed", solve_opts.seed, "RNG seed")->capture_default_str();
    solve->add_option("--max-iters", solve_opts.max_iters, "Iteration budget")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    solve->add_option("--tol", solve_opts.tol, "Feasibility tolerance on v(P, A)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    solve->add_option("--p0", solve_opts.p0, "Initial iterate (JSON matrix or solution file)");
    solve->add_option("--trace", solve_opts.trace, "Write per-iteration NDJSON records here");
    solve->add_option("--out", solve_opts.out, "Solution file path (default: stdout)");

    VerifyOpts verify_opts;
    auto* verify = app.add_subcommand("verify", "Check a candidate P against a problem");
    verify->add_option("problem", verify_opts.problem, "Problem file (JSON)")->required();
    verify->add_option("candidate", verify_opts.candidate,
                       "Candidate matrix: JSON array or any file with a P field")
        ->required();

    GenerateOpts gen_opts;
    auto* gen = app.add_subcommand("generate", "Generate a random interval problem");
    gen->add_option("--n", gen_opts.n, "Matrix dimension")->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen->add_option("--kind", gen_opts.kind, "Problem kind")
        ->check(CLI::IsMember({"triangular-interval"}))
        ->capture_default_str();
    gen->add_option("--diag-lo", gen_opts.diag_lo, "Diagonal center lower bound")
        ->capture_default_str();
    gen->add_option("--diag-hi", gen_opts.diag_hi, "Diagonal center upper bound (< 0)")
        ->capture_default_str();
    gen->add_option("--halfwidth", gen_opts.halfwidth, "Interval halfwidth")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    gen->add_flag("--interval-diagonal", gen_opts.interval_diagonal,
                  "Give diagonal entries interval uncertainty too");
    gen->add_option("--seed", gen_opts.seed, "RNG seed")->capture_default_str();
    gen->add_option("--out", gen_opts.out, "Problem file path (default: stdout)");

    BenchOpts bench_opts;
    auto* bench = app.add_subcommand(
        "bench", "Solve random triangular interval vertex families, report statistics");
    bench->add_option("--n", bench_opts.n, "Matrix dimension (4 or 5)")->capture_default_str();
    bench->add_option("--trials", bench_opts.trials, "Number of generated families")
        ->capture_default_str();
    bench->add_option("--seed", bench_opts.seed, "Base RNG seed (trial t uses seed + t)")
        ->capture_default_str();
    bench->add_option("--max-iters", bench_opts.max_iters, "Iteration budget per trial")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    bench->add_option("--out", bench_opts.out, "Machine-readable summary path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(solve)) return run_solve(solve_opts);
        if (app.got_subcommand(verify)) return run_verify(verify_opts);
        if (app.got_subcommand(gen)) return run_generate(gen_opts);
        if (app.got_subcommand(bench)) return run_bench(bench_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

// Shared helpers for the test suites: seeded random matrix constructions,
// finite families with a planted quadratic certificate, and a small runner
// for exercising the installed CLI binary.

#ifndef CLFGRAD_TESTS_SUPPORT_HPP
#define CLFGRAD_TESTS_SUPPORT_HPP

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clfgrad/families.hpp"
#include "clfgrad/rng.hpp"
#include "clfgrad/solver.hpp"
#include "clfgrad/symmetric_matrix.hpp"
#include "clfgrad/verify.hpp"

namespace testsupport {

using clfgrad::FiniteFamily;
using clfgrad::Rng;
using clfgrad::SymMatrix;

inline Eigen::MatrixXd random_matrix(int n, Rng& rng, double lo = -1.0, double hi = 1.0) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

inline SymMatrix random_symmetric(int n, Rng& rng, double lo = -1.0, double hi = 1.0) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = rng.uniform(lo, hi);
    return SymMatrix(m);
}

inline Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
    const Eigen::MatrixXd g = random_matrix(n, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    // Fix the sign convention so the result depends only on the draws.
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
        if (r(i, i) < 0) q.col(i) = -q.col(i);
    return q;
}

// Symmetric positive definite with eigenvalues uniform in [eig_lo, eig_hi].
inline SymMatrix random_spd(int n, Rng& rng, double eig_lo, double eig_hi) {
    const Eigen::MatrixXd u = random_orthogonal(n, rng);
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = rng.uniform(eig_lo, eig_hi);
    return SymMatrix(u * d.asDiagonal() * u.transpose());
}

inline Eigen::MatrixXd random_skew(int n, Rng& rng, double scale = 2.0) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            const double x = rng.uniform(-scale, scale);
            w(i, j) = x;
            w(j, i) = -x;
        }
    return w;
}

// A Hurwitz matrix by Gershgorin: small random entries, strongly negative
// diagonal.
inline Eigen::MatrixXd random_hurwitz(int n, Rng& rng) {
    Eigen::MatrixXd a = random_matrix(n, rng, -0.3, 0.3);
    a.diagonal().array() -= static_cast<double>(n);
    return a;
}

// A finite family built around a planted certificate p_bar > 0: each member
// solves p_bar A_i + A_i^T p_bar = S_i with S_i <= -(Q + 0.1 I), so p_bar
// strictly satisfies every Lyapunov inequality and every member is Hurwitz.
struct Planted {
    FiniteFamily family;
    SymMatrix p_bar;
    SymMatrix q;
};

inline Planted make_planted(int n, int members, Rng& rng) {
    const SymMatrix q = SymMatrix::identity(n);
    const SymMatrix p_bar = random_spd(n, rng, 0.3, 4.0);
    const Eigen::MatrixXd p_inv = p_bar.mat().inverse();
    std::vector<Eigen::MatrixXd> mats;
    mats.reserve(static_cast<std::size_t>(members));
    for (int i = 0; i < members; ++i) {
        const Eigen::MatrixXd g = random_matrix(n, rng);
        const Eigen::MatrixXd s =
            -(q.mat() + g.transpose() * g + 0.1 * Eigen::MatrixXd::Identity(n, n));
        const Eigen::MatrixXd w = random_skew(n, rng);
        mats.push_back(p_inv * (0.5 * s + w));
    }
    return Planted{FiniteFamily(std::move(mats)), p_bar, q};
}

// ---- instrumented round-robin run ---------------------------------------

// Replays the finite-family round-robin iteration step by step so each
// correction can be audited against the guaranteed-descent inequality
// toward a certified ball center p_star of radius config.r.
struct DescentAudit {
    clfgrad::SolveStatus status = clfgrad::SolveStatus::MaxItersReached;
    long iterations = 0;
    long corrections = 0;
    long descent_failures = 0;
    bool symmetry_ok = true;
};

inline DescentAudit drive_round_robin(const clfgrad::ProblemSpec& spec,
                                      const clfgrad::SolverConfig& config,
                                      const SymMatrix& p_star) {
    using namespace clfgrad;
    const auto& family = std::get<FiniteFamily>(spec.family());
    const auto members = static_cast<long>(family.size());
    Rng rng(config.seed);
    SolverState state(config.p0 ? *config.p0 : SymMatrix::identity(spec.dim()));
    DescentAudit audit;
    while (state.k < config.max_iters) {
        const Selection sel = scheduler_next(SchedulerKind::RoundRobin, state.k,
                                             spec.family(), rng);
        const SymMatrix before = state.p;
        const TraceRecord rec =
            correction_step(state, sel.a, sel.index, spec, config, rng);
        // A degeneracy remedy perturbs the iterate before stepping, so the
        // guaranteed-descent inequality only holds from the perturbed point;
        // audit the unperturbed corrections.
        if (rec.was_correction && !rec.was_degenerate_perturbation &&
            !descent_check(before, state.p, p_star, config.r)) {
            ++audit.descent_failures;
        }
        if ((state.p.mat() - state.p.mat().transpose()).norm() > 1e-12) {
            audit.symmetry_ok = false;
        }
        if (state.consecutive_noncorrections >= members &&
            state.consecutive_noncorrections % members == 0 &&
            verify_finite(state.p, family, spec.q()).feasible) {
            audit.status = SolveStatus::Solved;
            break;
        }
    }
    audit.iterations = state.k;
    audit.corrections = state.corrections;
    return audit;
}

// ---- CLI process runner -------------------------------------------------

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

inline std::string cli_path() {
    const char* p = std::getenv("CLFGRAD_CLI");
    if (!p || !*p) {
        throw std::runtime_error("CLFGRAD_CLI is not set; run through ctest or export the "
                                 "path to the clfgrad binary");
    }
    return p;
}

inline std::filesystem::path fresh_tmpdir(const std::string& tag) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("clfgrad_" + tag + "_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

// Runs the CLI with the given (pre-quoted, whitespace-free) arguments in
// workdir, capturing stdout/stderr.
inline CliResult run_cli(const std::vector<std::string>& args,
                         const std::filesystem::path& workdir) {
    const auto out_path = workdir / "_stdout.txt";
    const auto err_path = workdir / "_stderr.txt";
    std::string cmd = "cd '" + workdir.string() + "' && '" + cli_path() + "'";
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " > '" + out_path.string() + "' 2> '" + err_path.string() + "'";
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = (status == -1) ? -1 : WEXITSTATUS(status);
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

}  // namespace testsupport

#endif

#ifndef CLFGRAD_SOLVER_HPP
#define CLFGRAD_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "clfgrad/families.hpp"
#include "clfgrad/functionals.hpp"
#include "clfgrad/rng.hpp"
#include "clfgrad/verify.hpp"

namespace clfgrad {

enum class Variant {
    Plain,      // P <- P - mu * grad
    Projected,  // P <- [P - mu * grad]+, projected onto the PSD cone
};

enum class SchedulerKind {
    RoundRobin,  // index (k mod N); finite families only
    Randomized,  // uniform index (finite) or uniform box sample (interval)
};

enum class SolveStatus {
    Solved,           // terminal certification passed
    MaxItersReached,  // iteration budget exhausted; no feasibility claim
    DegeneracyStall,  // perturbation failed to break a repeated top eigenvalue
};

struct SolverConfig {
    double alpha = 1.0;  // step-size mix, in [0, 1]
    double r = 1.0;      // guaranteed per-correction progress, > 0
    Functional functional = Functional::SquaredPositivePart;
    Variant variant = Variant::Plain;
    SchedulerKind scheduler = SchedulerKind::RoundRobin;
    std::uint64_t seed = 0;
    long max_iters = 1'000'000;
    // A correction fires when v exceeds this. Zero matches the iteration
    // rule exactly; a small positive value absorbs boundary chatter.
    double feasibility_tol = 0.0;
    std::optional<SymMatrix> p0;  // identity when unset
    double degeneracy_perturb_scale = 1e-8;
    bool record_trace = false;
};

struct SolverState {
    explicit SolverState(SymMatrix p0) : p(std::move(p0)) {}

    long k = 0;
    SymMatrix p;
    long corrections = 0;
    long last_correction_iter = -1;
    long consecutive_noncorrections = 0;
};

// One line of the run log; serialized by the CLI as newline-delimited JSON.
struct TraceRecord {
    long k = 0;
    // Family index of the selected matrix; -1 for sampled interval members.
    long index = 0;
    double v_value = 0.0;
    double step_size = 0.0;  // 0 when no correction
    double grad_norm = 0.0;  // 0 when no correction
    bool was_correction = false;
    bool was_degenerate_perturbation = false;
};

struct SolverOutcome {
    SolveStatus status;
    SymMatrix p_final;
    long iterations;
    long corrections;
    std::vector<TraceRecord> trace;           // empty unless record_trace
    std::optional<Certificate> certificate;   // present exactly when Solved
};

inline constexpr double kZeroGradientTol = 1e-14;
inline constexpr int kMaxPerturbAttempts = 5;

// mu = (alpha * v + r * ||grad||) / ||grad||^2 for v > 0. The r term makes
// every correction move the iterate by Frobenius distance at least r.
// Throws ZeroGradient when grad_norm <= kZeroGradientTol.
double step_size(double v_value, double grad_norm, double alpha, double r);

// P plus a random symmetric shift of Frobenius norm scale * max(1, ||P||);
// breaks a repeated top eigenvalue. scale == 0 returns P unchanged.
SymMatrix degenerate_perturbation(const SymMatrix& p, double scale, Rng& rng);

// True iff ||P_after - P_star||^2 <= ||P_before - P_star||^2 - r^2, up to
// eps = 1e-9 * (1 + ||P_before||^2). Meaningful when a correction step ran
// between the two states and the ball of radius r around P_star is
// feasible.
bool descent_check(const SymMatrix& p_before, const SymMatrix& p_after,
                   const SymMatrix& p_star, double r);

struct Selection {
    Eigen::MatrixXd a;
    long index;  // -1 for sampled interval members
};

// Matrix to visit at iteration k. Round-robin revisits every finite index
// once per N consecutive iterations; the randomized scheduler draws from
// rng and is deterministic given the seed.
Selection scheduler_next(SchedulerKind scheduler, long k, const MatrixFamily& family,
                         Rng& rng);

// One iteration: if v(P_k, A) exceeds the feasibility tolerance, take the
// (optionally projected) gradient step, else leave P unchanged. k advances
// either way. Under MaxEigenvalue a degenerate top eigenvalue triggers up
// to kMaxPerturbAttempts perturbations of P before DegeneracyStall is
// thrown. ZeroGradient propagates.
TraceRecord correction_step(SolverState& state, const Eigen::MatrixXd& a, long index,
                            const ProblemSpec& spec, const SolverConfig& config,
                            Rng& rng);

// Full run: schedule, correct, and certify. Finite families terminate after
// N consecutive non-corrections confirmed by verify_finite; interval
// families after 10 * (free entries + 1) consecutive non-corrections
// confirmed over the vertices when enumerable. Throws NonHurwitzInput if a
// finite member is unstable.
SolverOutcome run(const ProblemSpec& spec, const SolverConfig& config);

}  // namespace clfgrad

#endif

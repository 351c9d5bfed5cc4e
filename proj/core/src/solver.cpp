#include "clfgrad/solver.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "clfgrad/errors.hpp"

namespace clfgrad {

namespace {

void validate_config(const SolverConfig& config) {
    if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
        throw std::invalid_argument("SolverConfig: alpha must lie in [0, 1]");
    }
    if (!(config.r > 0.0)) {
        throw std::invalid_argument("SolverConfig: r must be positive");
    }
    if (config.max_iters < 0) {
        throw std::invalid_argument("SolverConfig: max_iters must be nonnegative");
    }
    if (config.feasibility_tol < 0.0) {
        throw std::invalid_argument("SolverConfig: feasibility_tol must be nonnegative");
    }
    if (config.degeneracy_perturb_scale < 0.0) {
        throw std::invalid_argument("SolverConfig: perturbation scale must be nonnegative");
    }
}

}  // namespace

double step_size(double v_value, double grad_norm, double alpha, double r) {
    if (grad_norm <= kZeroGradientTol) {
        throw ZeroGradient("step_size: gradient norm " + std::to_string(grad_norm) +
                           " is numerically zero while v > 0");
    }
    return (alpha * v_value + r * grad_norm) / (grad_norm * grad_norm);
}

SymMatrix degenerate_perturbation(const SymMatrix& p, double scale, Rng& rng) {
    if (scale == 0.0) return p;
    const Eigen::Index n = p.dim();
    Eigen::MatrixXd shift(n, n);
    double norm = 0.0;
    do {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i; j < n; ++j) {
                const double x = rng.uniform(-1.0, 1.0);
                shift(i, j) = x;
                shift(j, i) = x;
            }
        }
        norm = shift.norm();
    } while (norm == 0.0);
    shift *= scale * std::max(1.0, frobenius_norm(p)) / norm;
    return SymMatrix(p.mat() + shift);
}

bool descent_check(const SymMatrix& p_before, const SymMatrix& p_after,
                   const SymMatrix& p_star, double r) {
    if (p_before.dim() != p_after.dim() || p_before.dim() != p_star.dim()) {
        throw DimensionMismatch("descent_check: dimensions differ");
    }
    const double before = (p_before.mat() - p_star.mat()).squaredNorm();
    const double after = (p_after.mat() - p_star.mat()).squaredNorm();
    const double eps = 1e-9 * (1.0 + p_before.mat().squaredNorm());
    return after <= before - r * r + eps;
}

Selection scheduler_next(SchedulerKind scheduler, long k, const MatrixFamily& family,
                         Rng& rng) {
    if (const FiniteFamily* finite = std::get_if<FiniteFamily>(&family)) {
        const std::size_t n = finite->size();
        std::size_t idx = 0;
        switch (scheduler) {
            case SchedulerKind::RoundRobin:
                idx = static_cast<std::size_t>(k) % n;
                break;
            case SchedulerKind::Randomized:
                idx = static_cast<std::size_t>(rng.uniform_index(n));
                break;
        }
        return Selection{(*finite)[idx], static_cast<long>(idx)};
    }
    const IntervalFamily& box = std::get<IntervalFamily>(family);
    if (scheduler == SchedulerKind::RoundRobin) {
        throw std::invalid_argument(
            "scheduler_next: round-robin requires a finite family; interval "
            "families must use the randomized scheduler");
    }
    return Selection{sample_member(box, rng), -1};
}

TraceRecord correction_step(SolverState& state, const Eigen::MatrixXd& a, long index,
                            const ProblemSpec& spec, const SolverConfig& config,
                            Rng& rng) {
    TraceRecord rec;
    rec.k = state.k;
    rec.index = index;

    const auto leave_unchanged = [&](double v) {
        rec.v_value = v;
        state.consecutive_noncorrections += 1;
        state.k += 1;
        return rec;
    };

    // Value-only pass decides the branch; the gradient is computed only
    // when a correction actually fires.
    const double v = v_eval(state.p, a, spec.q(), config.functional);
    if (v <= config.feasibility_tol) {
        return leave_unchanged(v);
    }

    GradientReport report = v_grad(state.p, a, spec.q(), config.functional);
    if (report.degenerate_top_eigenvalue) {
        int attempts = 0;
        while (report.degenerate_top_eigenvalue) {
            if (attempts == kMaxPerturbAttempts) {
                throw DegeneracyStall("correction_step: top eigenvalue still degenerate after " +
                                      std::to_string(kMaxPerturbAttempts) +
                                      " perturbations");
            }
            state.p = degenerate_perturbation(state.p, config.degeneracy_perturb_scale, rng);
            rec.was_degenerate_perturbation = true;
            report = v_grad(state.p, a, spec.q(), config.functional);
            ++attempts;
        }
        // The perturbation may have dropped the violation below threshold.
        if (report.value <= config.feasibility_tol) {
            return leave_unchanged(report.value);
        }
    }

    const double grad_norm = frobenius_norm(report.gradient);
    const double mu = step_size(report.value, grad_norm, config.alpha, config.r);
    SymMatrix next(state.p.mat() - mu * report.gradient.mat());
    if (config.variant == Variant::Projected) {
        next = psd_projection(next);
    }

    state.p = std::move(next);
    state.corrections += 1;
    state.last_correction_iter = state.k;
    state.consecutive_noncorrections = 0;
    state.k += 1;

    rec.v_value = report.value;
    rec.step_size = mu;
    rec.grad_norm = grad_norm;
    rec.was_correction = true;
    return rec;
}

SolverOutcome run(const ProblemSpec& spec, const SolverConfig& config) {
    validate_config(config);

    const Eigen::Index n = spec.dim();
    SymMatrix p0 = config.p0.has_value() ? *config.p0 : SymMatrix::identity(n);
    if (p0.dim() != n) {
        throw DimensionMismatch("run: initial P dimension differs from the family");
    }

    const FiniteFamily* finite = std::get_if<FiniteFamily>(&spec.family());
    const IntervalFamily* box = std::get_if<IntervalFamily>(&spec.family());
    if (finite != nullptr) {
        for (std::size_t i = 0; i < finite->size(); ++i) {
            if (!hurwitz_check((*finite)[i])) {
                throw NonHurwitzInput("run: family member " + std::to_string(i) +
                                      " is not Hurwitz");
            }
        }
    } else if (config.scheduler == SchedulerKind::RoundRobin) {
        throw std::invalid_argument(
            "run: interval families require the randomized scheduler");
    }

    // Candidate window: how many consecutive clean iterations make the
    // iterate worth certifying. A round-robin pass needs exactly N.
    const long window = finite != nullptr
                            ? static_cast<long>(finite->size())
                            : 10L * (box->free_entry_count() + 1);
    const bool certifiable =
        finite != nullptr || box->free_entry_count() <= kMaxFreeEntries;

    Rng rng(config.seed);
    SolverState state(std::move(p0));
    std::vector<TraceRecord> trace;

    const auto outcome = [&](SolveStatus status, std::optional<Certificate> cert) {
        return SolverOutcome{status,           state.p, state.k,
                             state.corrections, std::move(trace), std::move(cert)};
    };

    while (state.k < config.max_iters) {
        const Selection sel = scheduler_next(config.scheduler, state.k, spec.family(), rng);
        TraceRecord rec;
        try {
            rec = correction_step(state, sel.a, sel.index, spec, config, rng);
        } catch (const DegeneracyStall&) {
            return outcome(SolveStatus::DegeneracyStall, std::nullopt);
        }
        if (config.record_trace) {
            trace.push_back(rec);
        }

        if (certifiable && state.consecutive_noncorrections >= window &&
            state.consecutive_noncorrections % window == 0) {
            Certificate cert =
                finite != nullptr
                    ? verify_finite(state.p, *finite, spec.q())
                    : verify_interval_via_vertices(state.p, *box, spec.q());
            if (cert.feasible) {
                return outcome(SolveStatus::Solved, std::move(cert));
            }
        }
    }
    return outcome(SolveStatus::MaxItersReached, std::nullopt);
}

}  // namespace clfgrad

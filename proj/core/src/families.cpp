#include "clfgrad/families.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clfgrad/errors.hpp"

namespace clfgrad {

FiniteFamily::FiniteFamily(std::vector<Eigen::MatrixXd> matrices)
    : matrices_(std::move(matrices)) {
    if (matrices_.empty()) {
        throw std::invalid_argument("FiniteFamily: at least one matrix required");
    }
    const Eigen::Index n = matrices_[0].rows();
    for (const Eigen::MatrixXd& m : matrices_) {
        if (m.rows() != m.cols() || m.rows() != n) {
            throw DimensionMismatch("FiniteFamily: members must be square with one dimension");
        }
        if (!m.allFinite()) {
            throw std::invalid_argument("FiniteFamily: entries must be finite");
        }
    }
}

IntervalFamily::IntervalFamily(Eigen::MatrixXd lower, Eigen::MatrixXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.rows() != lower_.cols() || upper_.rows() != upper_.cols() ||
        lower_.rows() != upper_.rows()) {
        throw DimensionMismatch("IntervalFamily: bounds must be square with one dimension");
    }
    if (!lower_.allFinite() || !upper_.allFinite()) {
        throw std::invalid_argument("IntervalFamily: entries must be finite");
    }
    if ((lower_.array() > upper_.array()).any()) {
        throw std::invalid_argument("IntervalFamily: requires lower <= upper entrywise");
    }
}

int IntervalFamily::free_entry_count() const {
    return static_cast<int>((lower_.array() < upper_.array()).count());
}

Eigen::Index family_dim(const MatrixFamily& family) {
    return std::visit([](const auto& f) { return f.dim(); }, family);
}

ProblemSpec::ProblemSpec(MatrixFamily family, SymMatrix q)
    : family_(std::move(family)), q_(std::move(q)) {
    if (family_dim(family_) != q_.dim()) {
        throw DimensionMismatch("ProblemSpec: family and Q dimensions differ");
    }
    if (lambda_min(q_) <= 0.0) {
        throw std::invalid_argument("ProblemSpec: Q must be positive definite");
    }
}

bool hurwitz_check(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("hurwitz_check: input must be square");
    }
    if (!a.allFinite()) {
        throw std::invalid_argument("hurwitz_check: entries must be finite");
    }
    constexpr double margin = 1e-12;
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw EigenSolverFailure("hurwitz_check: solver did not converge");
    }
    return (es.eigenvalues().real().array() < -margin).all();
}

FiniteFamily enumerate_vertices(const IntervalFamily& box) {
    const int free = box.free_entry_count();
    if (free > kMaxFreeEntries) {
        throw TooManyVertices("enumerate_vertices: " + std::to_string(free) +
                              " free entries exceeds the cap of " +
                              std::to_string(kMaxFreeEntries));
    }
    const Eigen::Index n = box.dim();

    // Row-major positions of the free entries; bit b of the vertex index
    // drives free entry b.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> free_pos;
    free_pos.reserve(static_cast<std::size_t>(free));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (box.lower()(i, j) < box.upper()(i, j)) free_pos.emplace_back(i, j);
        }
    }

    const std::size_t count = std::size_t{1} << free_pos.size();
    std::vector<Eigen::MatrixXd> vertices;
    vertices.reserve(count);
    for (std::size_t v = 0; v < count; ++v) {
        Eigen::MatrixXd m = box.lower();
        for (std::size_t b = 0; b < free_pos.size(); ++b) {
            if ((v >> b) & 1u) {
                m(free_pos[b].first, free_pos[b].second) =
                    box.upper()(free_pos[b].first, free_pos[b].second);
            }
        }
        vertices.push_back(std::move(m));
    }
    return FiniteFamily(std::move(vertices));
}

Eigen::MatrixXd sample_member(const IntervalFamily& box, Rng& rng) {
    const Eigen::Index n = box.dim();
    Eigen::MatrixXd m = box.lower();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (box.lower()(i, j) < box.upper()(i, j)) {
                m(i, j) = rng.uniform(box.lower()(i, j), box.upper()(i, j));
            }
        }
    }
    return m;
}

IntervalFamily generate_triangular_interval(const TriangularIntervalParams& params,
                                            Rng& rng) {
    if (params.n < 1) {
        throw std::invalid_argument("generate_triangular_interval: n must be >= 1");
    }
    if (!(params.diag_lo <= params.diag_hi) || !(params.diag_hi < 0.0)) {
        throw std::invalid_argument(
            "generate_triangular_interval: requires diag_lo <= diag_hi < 0");
    }
    if (params.halfwidth < 0.0) {
        throw std::invalid_argument("generate_triangular_interval: halfwidth must be >= 0");
    }

    const Eigen::Index n = params.n;
    Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd upper = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            if (i == j) {
                const double c = rng.uniform(params.diag_lo, params.diag_hi);
                // Clamp so the interval stays strictly negative; every
                // vertex of a triangular family is then Hurwitz.
                const double w =
                    params.interval_diagonal ? std::min(params.halfwidth, 0.5 * -c) : 0.0;
                lower(i, j) = c - w;
                upper(i, j) = c + w;
            } else {
                const double c = rng.uniform(-1.0, 1.0);
                lower(i, j) = c - params.halfwidth;
                upper(i, j) = c + params.halfwidth;
            }
        }
    }
    return IntervalFamily(std::move(lower), std::move(upper));
}

double inner_ball_bound(const SymMatrix& p, const FiniteFamily& family,
                        const SymMatrix& q, double gamma) {
    if (!(gamma > 1.0)) {
        throw std::invalid_argument("inner_ball_bound: gamma must exceed 1");
    }
    if (p.dim() != family.dim() || q.dim() != family.dim()) {
        throw DimensionMismatch("inner_ball_bound: dimensions differ");
    }
    double max_sigma = 0.0;
    for (const Eigen::MatrixXd& a : family.matrices()) {
        max_sigma = std::max(max_sigma, sigma_max(a));
    }
    if (max_sigma == 0.0) {
        throw std::invalid_argument("inner_ball_bound: family has only zero matrices");
    }
    return (gamma - 1.0) * lambda_min(q) / (2.0 * max_sigma);
}

}  // namespace clfgrad

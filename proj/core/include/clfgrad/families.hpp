#ifndef CLFGRAD_FAMILIES_HPP
#define CLFGRAD_FAMILIES_HPP

#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "clfgrad/rng.hpp"
#include "clfgrad/symmetric_matrix.hpp"

namespace clfgrad {

// Ordered list A_0, ..., A_{N-1} of square matrices of one dimension.
class FiniteFamily {
public:
    explicit FiniteFamily(std::vector<Eigen::MatrixXd> matrices);

    Eigen::Index dim() const { return matrices_[0].rows(); }
    std::size_t size() const { return matrices_.size(); }
    const Eigen::MatrixXd& operator[](std::size_t i) const { return matrices_[i]; }
    const std::vector<Eigen::MatrixXd>& matrices() const { return matrices_; }

private:
    std::vector<Eigen::MatrixXd> matrices_;
};

// Entrywise box {A : L <= A <= U}. An entry with L_ij < U_ij is free; the
// rest are fixed at their common value.
class IntervalFamily {
public:
    IntervalFamily(Eigen::MatrixXd lower, Eigen::MatrixXd upper);

    Eigen::Index dim() const { return lower_.rows(); }
    const Eigen::MatrixXd& lower() const { return lower_; }
    const Eigen::MatrixXd& upper() const { return upper_; }
    int free_entry_count() const;

private:
    Eigen::MatrixXd lower_;
    Eigen::MatrixXd upper_;
};

using MatrixFamily = std::variant<FiniteFamily, IntervalFamily>;

Eigen::Index family_dim(const MatrixFamily& family);

// A family together with the fixed Q > 0 of the Lyapunov inequalities.
class ProblemSpec {
public:
    // Throws if Q is not positive definite or dimensions disagree.
    ProblemSpec(MatrixFamily family, SymMatrix q);

    const MatrixFamily& family() const { return family_; }
    const SymMatrix& q() const { return q_; }
    Eigen::Index dim() const { return q_.dim(); }

private:
    MatrixFamily family_;
    SymMatrix q_;
};

// Real parts strictly below -1e-12, so numerically-zero real parts do not
// pass as stable.
bool hurwitz_check(const Eigen::MatrixXd& a);

// Enumeration cap: at most 2^20 vertices.
inline constexpr int kMaxFreeEntries = 20;

// All 2^(free entries) corner matrices. Free entries are scanned row-major;
// bit b of the vertex index set means free entry b sits at its upper bound.
// The ordering is part of the contract (round-robin runs reproduce exactly).
FiniteFamily enumerate_vertices(const IntervalFamily& box);

// One member with each free entry drawn independently uniform on its
// interval, in row-major scan order. Fixed entries consume no draws.
Eigen::MatrixXd sample_member(const IntervalFamily& box, Rng& rng);

struct TriangularIntervalParams {
    int n = 4;
    double diag_lo = -2.0;
    double diag_hi = -1.0;          // must stay negative
    double halfwidth = 0.25;        // strict-upper interval half-width
    bool interval_diagonal = false; // widen diagonal entries into intervals too
};

// Upper-triangular interval family whose every member is Hurwitz: the
// strictly-lower part is fixed at zero and all diagonal bounds are
// negative. Diagonal centers are drawn uniform in [diag_lo, diag_hi],
// strict-upper centers uniform in [-1, 1]. With interval_diagonal the
// diagonal half-width is clamped to half the center magnitude so the upper
// bound stays negative.
IntervalFamily generate_triangular_interval(const TriangularIntervalParams& params,
                                            Rng& rng);

// Radius rho = (gamma - 1) lambda_min(Q) / (2 max_i sigma_max(A_i)).
// When P satisfies every Lyapunov inequality of (family, Q), any symmetric
// shift with ||dP|| <= rho keeps gamma P + dP feasible. Throws on
// gamma <= 1.
double inner_ball_bound(const SymMatrix& p, const FiniteFamily& family,
                        const SymMatrix& q, double gamma);

}  // namespace clfgrad

#endif

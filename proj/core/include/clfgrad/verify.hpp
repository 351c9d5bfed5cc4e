#ifndef CLFGRAD_VERIFY_HPP
#define CLFGRAD_VERIFY_HPP

#include <vector>

#include "clfgrad/families.hpp"
#include "clfgrad/symmetric_matrix.hpp"

namespace clfgrad {

// Per-constraint certification of a candidate P. residuals[i] is
// lambda_max(P A_i + A_i^T P + Q) for constraint (or vertex) i; the
// constraint holds when it is <= 0.
struct Certificate {
    SymMatrix p;
    std::vector<double> residuals;
    double worst_residual;
    double lambda_min_p;
    double cert_tol;
    bool feasible;            // worst_residual <= cert_tol and lambda_min_p > 0
    // Residuals passed but P is not positive definite. A symmetric P
    // satisfying even one inequality is automatically positive definite,
    // so this combination signals eigensolver noise, not a real solution.
    bool positivity_anomaly;
};

// Relative default absorbs eigensolver noise without accepting materially
// infeasible candidates.
inline double default_cert_tol(const SymMatrix& p) {
    return 1e-9 * (1.0 + frobenius_norm(p));
}

// lambda_max(P A + A^T P + Q).
double residual(const SymMatrix& p, const Eigen::MatrixXd& a, const SymMatrix& q);

Certificate verify_finite(const SymMatrix& p, const FiniteFamily& family,
                          const SymMatrix& q, double cert_tol);
Certificate verify_finite(const SymMatrix& p, const FiniteFamily& family,
                          const SymMatrix& q);

// Certification over enumerate_vertices(box). The constraint is affine in
// A, so feasibility at every vertex certifies the whole box.
Certificate verify_interval_via_vertices(const SymMatrix& p, const IntervalFamily& box,
                                         const SymMatrix& q, double cert_tol);
Certificate verify_interval_via_vertices(const SymMatrix& p, const IntervalFamily& box,
                                         const SymMatrix& q);

}  // namespace clfgrad

#endif

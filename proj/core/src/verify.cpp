#include "clfgrad/verify.hpp"

#include <algorithm>

#include "clfgrad/functionals.hpp"

namespace clfgrad {

double residual(const SymMatrix& p, const Eigen::MatrixXd& a, const SymMatrix& q) {
    return lambda_max(constraint_matrix(p, a, q));
}

Certificate verify_finite(const SymMatrix& p, const FiniteFamily& family,
                          const SymMatrix& q, double cert_tol) {
    if (p.dim() != family.dim() || q.dim() != family.dim()) {
        throw DimensionMismatch("verify_finite: dimensions differ");
    }
    Certificate cert{p, {}, 0.0, 0.0, cert_tol, false, false};
    cert.residuals.reserve(family.size());
    double worst = -std::numeric_limits<double>::infinity();
    for (const Eigen::MatrixXd& a : family.matrices()) {
        const double res = residual(p, a, q);
        cert.residuals.push_back(res);
        worst = std::max(worst, res);
    }
    cert.worst_residual = worst;
    cert.lambda_min_p = lambda_min(p);
    const bool residuals_pass = cert.worst_residual <= cert_tol;
    cert.feasible = residuals_pass && cert.lambda_min_p > 0.0;
    cert.positivity_anomaly = residuals_pass && cert.lambda_min_p <= 0.0;
    return cert;
}

Certificate verify_finite(const SymMatrix& p, const FiniteFamily& family,
                          const SymMatrix& q) {
    return verify_finite(p, family, q, default_cert_tol(p));
}

Certificate verify_interval_via_vertices(const SymMatrix& p, const IntervalFamily& box,
                                         const SymMatrix& q, double cert_tol) {
    return verify_finite(p, enumerate_vertices(box), q, cert_tol);
}

Certificate verify_interval_via_vertices(const SymMatrix& p, const IntervalFamily& box,
                                         const SymMatrix& q) {
    return verify_interval_via_vertices(p, box, q, default_cert_tol(p));
}

}  // namespace clfgrad

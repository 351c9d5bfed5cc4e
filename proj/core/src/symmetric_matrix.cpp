#include "clfgrad/symmetric_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace clfgrad {

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("SymMatrix: input must be square");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("SymMatrix: entries must be finite");
    }
    mat_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(Eigen::Index n) {
    return SymMatrix(Eigen::MatrixXd::Identity(n, n));
}

SymMatrix SymMatrix::zero(Eigen::Index n) {
    return SymMatrix(Eigen::MatrixXd::Zero(n, n));
}

double frobenius_norm(const SymMatrix& r) { return r.mat().norm(); }

double inner_product(const SymMatrix& r, const SymMatrix& s) {
    if (r.dim() != s.dim()) {
        throw DimensionMismatch("inner_product: dimensions differ");
    }
    // tr(RS) = sum_ij R_ij S_ij for symmetric operands.
    return r.mat().cwiseProduct(s.mat()).sum();
}

EigenDecomposition sym_eigendecompose(const SymMatrix& r) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.mat());
    if (es.info() != Eigen::Success) {
        throw EigenSolverFailure("sym_eigendecompose: solver did not converge");
    }
    // Eigen returns ascending order; flip to descending.
    EigenDecomposition out;
    out.eigenvalues = es.eigenvalues().reverse();
    out.eigenvectors = es.eigenvectors().rowwise().reverse();
    return out;
}

SymMatrix psd_projection(const SymMatrix& r) {
    const EigenDecomposition eig = sym_eigendecompose(r);
    const Eigen::Index n = r.dim();
    if (eig.eigenvalues(n - 1) >= 0.0) {
        return r;  // already PSD
    }
    const Eigen::VectorXd clipped = eig.eigenvalues.cwiseMax(0.0);
    return SymMatrix(eig.eigenvectors * clipped.asDiagonal() *
                     eig.eigenvectors.transpose());
}

SymMatrix nsd_part(const SymMatrix& r) {
    return SymMatrix(r.mat() - psd_projection(r).mat());
}

double sigma_max(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("sigma_max: input must be square");
    }
    if (!a.allFinite()) {
        throw std::invalid_argument("sigma_max: entries must be finite");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.transpose() * a,
                                                      Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw EigenSolverFailure("sigma_max: solver did not converge");
    }
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double lambda_max(const SymMatrix& r) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.mat(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw EigenSolverFailure("lambda_max: solver did not converge");
    }
    return es.eigenvalues().maxCoeff();
}

double lambda_min(const SymMatrix& r) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.mat(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw EigenSolverFailure("lambda_min: solver did not converge");
    }
    return es.eigenvalues().minCoeff();
}

}  // namespace clfgrad

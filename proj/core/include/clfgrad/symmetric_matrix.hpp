#ifndef CLFGRAD_SYMMETRIC_MATRIX_HPP
#define CLFGRAD_SYMMETRIC_MATRIX_HPP

#include <Eigen/Dense>

#include "clfgrad/errors.hpp"

namespace clfgrad {

// Real symmetric n x n matrix in the Frobenius geometry. Symmetry is
// enforced at construction by averaging (M + M^T)/2, which is exact for
// already-symmetric input and stops rounding asymmetry from accumulating
// across iterations.
class SymMatrix {
public:
    // Throws DimensionMismatch on non-square input and
    // std::invalid_argument on non-finite entries.
    explicit SymMatrix(const Eigen::MatrixXd& m);

    static SymMatrix identity(Eigen::Index n);
    static SymMatrix zero(Eigen::Index n);

    Eigen::Index dim() const { return mat_.rows(); }
    const Eigen::MatrixXd& mat() const { return mat_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

private:
    Eigen::MatrixXd mat_;
};

// Eigendecomposition R = U diag(eigenvalues) U^T with eigenvalues sorted
// descending and U orthonormal. Reconstruction and orthonormality hold to
// eig_tolerance(n).
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

inline double eig_tolerance(Eigen::Index n) { return 1e-10 * static_cast<double>(n); }

double frobenius_norm(const SymMatrix& r);

// tr(RS). Symmetric in its arguments; equals the entrywise product sum.
double inner_product(const SymMatrix& r, const SymMatrix& s);

// Throws EigenSolverFailure if the underlying routine does not converge.
EigenDecomposition sym_eigendecompose(const SymMatrix& r);

// Nearest (Frobenius) symmetric nonnegative definite matrix: clip negative
// eigenvalues to zero and reconstruct. PSD input is returned unchanged.
SymMatrix psd_projection(const SymMatrix& r);

// R minus its PSD projection; nonpositive definite.
SymMatrix nsd_part(const SymMatrix& r);

// Largest singular value of a general square matrix, via the symmetric
// eigenproblem of A^T A (only the top value is needed, a full SVD is not).
double sigma_max(const Eigen::MatrixXd& a);

double lambda_max(const SymMatrix& r);
double lambda_min(const SymMatrix& r);

}  // namespace clfgrad

#endif

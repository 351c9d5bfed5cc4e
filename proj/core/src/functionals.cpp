#include "clfgrad/functionals.hpp"

#include <cmath>

namespace clfgrad {

namespace {

struct ValueGrad {
    double value;
    Eigen::MatrixXd grad;
    bool degenerate;
};

// Shared eigendecomposition path so v_grad pays for one solve.
ValueGrad eval_and_grad(Functional f, const SymMatrix& r) {
    const EigenDecomposition eig = sym_eigendecompose(r);
    const Eigen::Index n = r.dim();
    ValueGrad out{0.0, Eigen::MatrixXd(), false};

    switch (f) {
        case Functional::SquaredPositivePart: {
            const Eigen::VectorXd clipped = eig.eigenvalues.cwiseMax(0.0);
            out.value = clipped.squaredNorm();
            out.grad = 2.0 * (eig.eigenvectors * clipped.asDiagonal() *
                              eig.eigenvectors.transpose());
            break;
        }
        case Functional::MaxEigenvalue: {
            out.value = eig.eigenvalues(0);
            if (n > 1) {
                const double gap = eig.eigenvalues(0) - eig.eigenvalues(1);
                out.degenerate = gap < degeneracy_gap(r);
            }
            const Eigen::VectorXd x = eig.eigenvectors.col(0);
            out.grad = x * x.transpose();
            break;
        }
    }
    return out;
}

}  // namespace

double f_eval(Functional f, const SymMatrix& r) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.mat(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw EigenSolverFailure("f_eval: solver did not converge");
    }
    switch (f) {
        case Functional::SquaredPositivePart:
            return es.eigenvalues().cwiseMax(0.0).squaredNorm();
        case Functional::MaxEigenvalue:
            return es.eigenvalues().maxCoeff();
    }
    return 0.0;  // unreachable
}

SymMatrix f_grad(Functional f, const SymMatrix& r, bool* degenerate) {
    const ValueGrad vg = eval_and_grad(f, r);
    if (vg.degenerate && degenerate == nullptr) {
        throw DegenerateTopEigenvalue("f_grad: top eigenvalue is not numerically simple");
    }
    if (degenerate != nullptr) {
        *degenerate = vg.degenerate;
    }
    return SymMatrix(vg.grad);
}

SymMatrix constraint_matrix(const SymMatrix& p, const Eigen::MatrixXd& a,
                            const SymMatrix& q) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("constraint_matrix: A must be square");
    }
    if (p.dim() != a.rows() || q.dim() != a.rows()) {
        throw DimensionMismatch("constraint_matrix: dimensions differ");
    }
    const Eigen::MatrixXd pa = p.mat() * a;
    return SymMatrix(pa + pa.transpose() + q.mat());
}

double v_eval(const SymMatrix& p, const Eigen::MatrixXd& a, const SymMatrix& q,
              Functional f) {
    return f_eval(f, constraint_matrix(p, a, q));
}

GradientReport v_grad(const SymMatrix& p, const Eigen::MatrixXd& a,
                      const SymMatrix& q, Functional f) {
    const SymMatrix r = constraint_matrix(p, a, q);
    const ValueGrad vg = eval_and_grad(f, r);
    const Eigen::MatrixXd ag = a * vg.grad;
    return GradientReport{vg.value, SymMatrix(ag + ag.transpose()), vg.degenerate};
}

}  // namespace clfgrad

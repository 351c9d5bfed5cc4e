#ifndef CLFGRAD_FUNCTIONALS_HPP
#define CLFGRAD_FUNCTIONALS_HPP

#include <Eigen/Dense>

#include "clfgrad/symmetric_matrix.hpp"

namespace clfgrad {

// Convex merit functionals on symmetric matrices. Both satisfy
// f(R) <= 0 iff R is nonpositive definite.
enum class Functional {
    SquaredPositivePart,  // f(R) = ||R+||^2, gradient 2 R+
    MaxEigenvalue,        // f(R) = lambda_max(R), gradient x x^T
};

// Value and gradient of the constraint functional at one family member.
struct GradientReport {
    double value;
    SymMatrix gradient;
    // Only ever set under MaxEigenvalue: the top eigenvalue gap fell below
    // degeneracy_gap(R) and the gradient was built from an arbitrary unit
    // top eigenvector. The solver owns the perturbation remedy.
    bool degenerate_top_eigenvalue = false;
};

// Relative gap under which lambda_max counts as numerically non-simple.
inline double degeneracy_gap(const SymMatrix& r) {
    return 1e-8 * std::max(1.0, frobenius_norm(r));
}

double f_eval(Functional f, const SymMatrix& r);

// Gradient of f at r. For MaxEigenvalue with a non-simple top eigenvalue:
// throws DegenerateTopEigenvalue when `degenerate` is null, otherwise sets
// *degenerate and still returns the x x^T subgradient direction.
SymMatrix f_grad(Functional f, const SymMatrix& r, bool* degenerate = nullptr);

// P A + A^T P + Q, symmetrized. The left-hand side of the Lyapunov
// inequality this library drives to the nonpositive cone.
SymMatrix constraint_matrix(const SymMatrix& p, const Eigen::MatrixXd& a,
                            const SymMatrix& q);

// v(P, A) = f(P A + A^T P + Q); convex in P, and v <= 0 exactly when P
// satisfies this member's Lyapunov inequality.
double v_eval(const SymMatrix& p, const Eigen::MatrixXd& a, const SymMatrix& q,
              Functional f);

// Gradient of v in P: A G + G A^T with G the gradient of f at the
// constraint matrix. Symmetric by construction.
GradientReport v_grad(const SymMatrix& p, const Eigen::MatrixXd& a,
                      const SymMatrix& q, Functional f);

}  // namespace clfgrad

#endif

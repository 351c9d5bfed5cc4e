#ifndef CLFGRAD_ERRORS_HPP
#define CLFGRAD_ERRORS_HPP

#include <stdexcept>

namespace clfgrad {

// Operands have incompatible dimensions.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The symmetric eigensolver did not converge.
struct EigenSolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// lambda_max of the argument is not numerically simple, so the
// max-eigenvalue functional has no well-defined gradient there.
struct DegenerateTopEigenvalue : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A correction was requested where the gradient norm is below ~1e-14.
struct ZeroGradient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Repeated perturbation failed to break an eigenvalue degeneracy.
struct DegeneracyStall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vertex enumeration of an interval family would exceed the hard cap.
struct TooManyVertices : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A family member has an eigenvalue with nonnegative real part.
struct NonHurwitzInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace clfgrad

#endif

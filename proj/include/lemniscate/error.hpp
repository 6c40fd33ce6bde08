#pragma once

#include <stdexcept>
#include <string>

namespace lemniscate {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration, dimension mismatch, out-of-range family parameter.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Gradient or Hessian requested at (or numerically on top of) one of the points w_k.
class PoleEvaluation : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant that must hold for every logarithmic potential was
/// observed to fail (positivity of a Hessian, hull localization, ...). Signals a
/// solver or input bug rather than a bad invocation.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

/// Iterative numerics (LP, root finding, descent) did not produce a usable answer.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold for its input.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace lemniscate

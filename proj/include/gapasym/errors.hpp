#pragma once

#include <stdexcept>
#include <string>

namespace gapasym {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad parameters, malformed radii, arguments outside a
/// function's domain. The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsortedRadii : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateRadii : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A finite radius lies outside the support disk of the limiting density.
class RadiiOutOfBulk : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A radius sits exactly on the support boundary b^(-1/(2b)).
class HardEdgeRadius : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The rational form of b was required but not supplied.
class MissingRational : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An iterative algorithm hit its term cap. CLI exit code 3.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// log theta was requested at a point where theta <= 0. Indicates an
/// upstream bug; theta is strictly positive on the real axis for
/// purely imaginary tau.
class ThetaNonpositive : public Error {
 public:
  using Error::Error;
};

}  // namespace gapasym

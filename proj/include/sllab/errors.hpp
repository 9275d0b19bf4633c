#pragma once

#include <stdexcept>
#include <string>

namespace sllab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite entries, malformed files, out-of-range parameters.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel hit its iteration cap without meeting its tolerance.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// The smooth Hessian of the subsolution was requested on an axis where it
/// does not exist.
class OffAxisRequired : public Error {
 public:
  using Error::Error;
};

/// The phase constraint cannot be met inside the eigenvalue box.
class InfeasibleQuery : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// Residual growth or another breakdown of the finite-difference iteration.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sllab

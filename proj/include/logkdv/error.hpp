#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logkdv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operation requires a different grid kind, or the grid is malformed.
class InvalidGridError : public Error {
 public:
  using Error::Error;
};

/// A field does not decay at the truncation edge of its domain.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double tail)
      : Error(what), tail_magnitude(tail) {}
  double tail_magnitude;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iters)
      : Error(what), iterations(iters) {}
  int iterations;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

/// Decay fit requested on a part that is below the noise floor.
class DegenerateFitError : public Error {
 public:
  using Error::Error;
};

/// Singular factorization or a linear solve whose residual is too large.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values appeared during time stepping.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step_index)
      : Error(what), step(step_index) {}
  std::size_t step;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Reconstructed field has an imaginary part above threshold.
class RealityViolationError : public Error {
 public:
  using Error::Error;
};

class ConstraintViolationError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration; `field` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field_name, const std::string& msg)
      : Error(field_name + ": " + msg), field(field_name) {}
  std::string field;
};

}  // namespace logkdv

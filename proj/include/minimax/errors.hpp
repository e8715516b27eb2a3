#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <utility>

namespace minimax {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad caller input: dimension mismatches, out-of-range parameters.
struct ArgumentError : Error {
  using Error::Error;
};

/// NaN/Inf or blow-up detected inside a numerical routine.
struct NumericalError : Error {
  NumericalError(const std::string& what, long iter)
      : Error(what), iteration(iter) {}
  long iteration = -1;
};

/// A matrix (or named block of one) is singular to working precision.
struct SingularError : Error {
  SingularError(const std::string& what, std::string which)
      : Error(what), block(std::move(which)) {}
  std::string block;
};

/// An iterative method ran out of budget; carries the last iterate.
struct NonConvergenceError : Error {
  NonConvergenceError(const std::string& what, Eigen::VectorXd last)
      : Error(what), last_iterate(std::move(last)) {}
  Eigen::VectorXd last_iterate;
};

struct ConfigError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct AnalysisError : Error {
  using Error::Error;
};

}  // namespace minimax

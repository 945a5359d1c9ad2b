#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zd {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad caller input: index out of range, mismatched dimensions, malformed spec.
struct InvalidArgumentError : Error {
  using Error::Error;
};

// A Press-Dyson tensor that violates the sign/magnitude/normalization
// constraints and therefore does not correspond to any strategy.
struct InfeasibleTensorError : Error {
  InfeasibleTensorError(const std::string& what, std::size_t history, int action)
      : Error(what), history(history), action(action) {}
  std::size_t history;  // index of the first offending history
  int action;           // 1-based offending action
};

// Requested state space exceeds the configured capacity.
struct CapacityError : Error {
  using Error::Error;
};

// Numerical failure in a stationary solve; carries the last residual.
struct SolverError : Error {
  SolverError(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

// Evaluation would overflow (e.g. e^{h s} with |h * s| too large).
struct RangeLimitError : Error {
  using Error::Error;
};

}  // namespace zd

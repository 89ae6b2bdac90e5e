#pragma once

#include <stdexcept>
#include <string>

namespace torspec {

/// Malformed arguments or inputs that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a result to the requested accuracy.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested eigenvalue is (numerically) double, so it has no gradient.
class DegenerateEigenvalue : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace torspec

namespace torspec {

/// A computed object fails one of its defining invariants.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace torspec

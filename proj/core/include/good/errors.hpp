#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace good {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Mismatched vector/matrix sizes.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Base for numerical failures (exit code 3 in the CLI).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An iterative procedure stopped before its stopping rule fired.
/// Carries the best point found so far, if there is one.
class NonConvergenceError : public NumericalError {
public:
  explicit NonConvergenceError(const std::string& what,
                               std::vector<double> best_point = {},
                               double best_value = 0.0)
      : NumericalError(what), best_point_(std::move(best_point)), best_value_(best_value) {}

  const std::vector<double>& best_point() const noexcept { return best_point_; }
  double best_value() const noexcept { return best_value_; }

private:
  std::vector<double> best_point_;
  double best_value_;
};

class SingularMatrixError : public NumericalError {
public:
  SingularMatrixError(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}

  /// Estimated reciprocal condition number at the point of failure.
  double rcond() const noexcept { return condition_; }

private:
  double condition_;
};

/// Input data problems: parse failures, invalid responses, unknown datasets.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace good

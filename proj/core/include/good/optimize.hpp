#pragma once

#include <functional>

#include <Eigen/Dense>

namespace good {

/// Objective for maximization. Returning -infinity marks a point infeasible.
using Objective = std::function<double(const Eigen::VectorXd&)>;

struct OptimOptions {
  /// Convergence threshold on the spread of objective values over the simplex.
  double tolerance = 1e-10;
  /// Convergence threshold on the simplex diameter, scaled by max(1, |x_i|).
  double x_tolerance = 1e-8;
  int max_iterations = 50'000;
  /// Relative edge length of the initial simplex.
  double initial_step = 0.1;
  /// Fresh simplices built around the best point after the first run.
  int restarts = 1;
};

struct OptimResult {
  Eigen::VectorXd point;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Nelder-Mead maximization (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5). Non-finite objective values rank below every finite one.
/// Throws DomainError if objective(start) is not finite.
OptimResult maximize(const Objective& objective, const Eigen::VectorXd& start,
                     const OptimOptions& options = {});

inline constexpr double kGradientStep = 1e-5;
inline constexpr double kHessianStep = 1e-4;

/// Central differences with h_i = step * max(1, |x_i|).
Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& point,
                                 double step = kGradientStep);

/// Central second differences, symmetrized as (H + H^T) / 2.
Eigen::MatrixXd numeric_hessian(const Objective& f, const Eigen::VectorXd& point,
                                double step = kHessianStep);

}  // namespace good

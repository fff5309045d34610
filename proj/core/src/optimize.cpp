#include "good/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "good/errors.hpp"

namespace good {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

// Internally we minimize cost = -objective; infeasible points cost +inf.
double cost_of(const Objective& objective, const Eigen::VectorXd& x) {
  const double v = objective(x);
  return std::isfinite(v) ? -v : std::numeric_limits<double>::infinity();
}

struct Simplex {
  std::vector<Eigen::VectorXd> vertices;
  std::vector<double> costs;

  void sort() {
    std::vector<std::size_t> order(vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
    std::vector<Eigen::VectorXd> v;
    std::vector<double> c;
    v.reserve(order.size());
    c.reserve(order.size());
    for (auto i : order) {
      v.push_back(vertices[i]);
      c.push_back(costs[i]);
    }
    vertices = std::move(v);
    costs = std::move(c);
  }

  double diameter() const {
    const auto& best = vertices.front();
    double d = 0.0;
    for (std::size_t k = 1; k < vertices.size(); ++k) {
      for (Eigen::Index i = 0; i < best.size(); ++i) {
        const double scale = std::max(1.0, std::abs(best[i]));
        d = std::max(d, std::abs(vertices[k][i] - best[i]) / scale);
      }
    }
    return d;
  }
};

Simplex initial_simplex(const Objective& objective, const Eigen::VectorXd& start,
                        double start_cost, double step) {
  Simplex simplex;
  simplex.vertices.push_back(start);
  simplex.costs.push_back(start_cost);
  for (Eigen::Index i = 0; i < start.size(); ++i) {
    double h = step * std::max(1.0, std::abs(start[i]));
    Eigen::VectorXd vertex = start;
    double c = std::numeric_limits<double>::infinity();
    // Probe +h, then -h, halving until a feasible vertex turns up.
    for (int attempt = 0; attempt < 30 && !std::isfinite(c); ++attempt) {
      for (double sign : {1.0, -1.0}) {
        vertex = start;
        vertex[i] += sign * h;
        c = cost_of(objective, vertex);
        if (std::isfinite(c)) break;
      }
      h *= 0.5;
    }
    simplex.vertices.push_back(vertex);
    simplex.costs.push_back(c);
  }
  return simplex;
}

struct RunOutcome {
  bool converged;
  int iterations;
};

RunOutcome run_nelder_mead(const Objective& objective, Simplex& simplex,
                           const OptimOptions& options, int budget) {
  const std::size_t n = simplex.vertices.size() - 1;
  int iter = 0;
  for (; iter < budget; ++iter) {
    simplex.sort();
    const double spread = simplex.costs.back() - simplex.costs.front();
    if (spread <= options.tolerance && simplex.diameter() <= options.x_tolerance) {
      return {true, iter};
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(simplex.vertices.front().size());
    for (std::size_t k = 0; k < n; ++k) centroid += simplex.vertices[k];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd& worst = simplex.vertices[n];
    const Eigen::VectorXd reflected = centroid + kReflect * (centroid - worst);
    const double reflected_cost = cost_of(objective, reflected);

    if (reflected_cost < simplex.costs.front()) {
      const Eigen::VectorXd expanded = centroid + kExpand * (reflected - centroid);
      const double expanded_cost = cost_of(objective, expanded);
      if (expanded_cost < reflected_cost) {
        simplex.vertices[n] = expanded;
        simplex.costs[n] = expanded_cost;
      } else {
        simplex.vertices[n] = reflected;
        simplex.costs[n] = reflected_cost;
      }
      continue;
    }
    if (reflected_cost < simplex.costs[n - 1]) {
      simplex.vertices[n] = reflected;
      simplex.costs[n] = reflected_cost;
      continue;
    }

    const bool outside = reflected_cost < simplex.costs[n];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + kContract * (reflected - centroid))
                : Eigen::VectorXd(centroid + kContract * (worst - centroid));
    const double contracted_cost = cost_of(objective, contracted);
    if (contracted_cost < (outside ? reflected_cost : simplex.costs[n])) {
      simplex.vertices[n] = contracted;
      simplex.costs[n] = contracted_cost;
      continue;
    }

    const Eigen::VectorXd best = simplex.vertices.front();
    for (std::size_t k = 1; k <= n; ++k) {
      simplex.vertices[k] = best + kShrink * (simplex.vertices[k] - best);
      simplex.costs[k] = cost_of(objective, simplex.vertices[k]);
    }
  }
  simplex.sort();
  return {false, iter};
}

}  // namespace

OptimResult maximize(const Objective& objective, const Eigen::VectorXd& start,
                     const OptimOptions& options) {
  if (start.size() == 0) throw DimensionError("maximize: empty start vector");
  const double start_cost = cost_of(objective, start);
  if (!std::isfinite(start_cost)) {
    throw DomainError("maximize: objective is not finite at the start point");
  }

  OptimResult result;
  result.point = start;
  result.value = -start_cost;

  int remaining = options.max_iterations;
  for (int round = 0; round <= options.restarts; ++round) {
    Simplex simplex = initial_simplex(objective, result.point, -result.value,
                                      options.initial_step);
    const auto outcome = run_nelder_mead(objective, simplex, options, remaining);
    remaining -= outcome.iterations;
    result.iterations += outcome.iterations;
    result.converged = outcome.converged;
    if (simplex.costs.front() <= -result.value) {
      result.point = simplex.vertices.front();
      result.value = -simplex.costs.front();
    }
    if (!outcome.converged) break;
  }
  return result;
}

namespace {

double finite_probe(const Objective& f, const Eigen::VectorXd& x, const char* who) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw NumericalError(std::string(who) + ": objective is not finite at a probe point");
  }
  return v;
}

double step_for(double step, double xi) { return step * std::max(1.0, std::abs(xi)); }

}  // namespace

Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& point, double step) {
  Eigen::VectorXd grad(point.size());
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    const double h = step_for(step, point[i]);
    Eigen::VectorXd up = point;
    Eigen::VectorXd down = point;
    up[i] += h;
    down[i] -= h;
    // divide by the spacing actually representable at point[i]
    grad[i] = (finite_probe(f, up, "numeric_gradient") -
               finite_probe(f, down, "numeric_gradient")) / (up[i] - down[i]);
  }
  return grad;
}

Eigen::MatrixXd numeric_hessian(const Objective& f, const Eigen::VectorXd& point, double step) {
  const Eigen::Index n = point.size();
  Eigen::MatrixXd hess(n, n);
  const double center = finite_probe(f, point, "numeric_hessian");
  Eigen::VectorXd h(n);
  for (Eigen::Index i = 0; i < n; ++i) h[i] = step_for(step, point[i]);

  auto at = [&](Eigen::Index i, double di, Eigen::Index j, double dj) {
    Eigen::VectorXd x = point;
    x[i] += di;
    x[j] += dj;
    return finite_probe(f, x, "numeric_hessian");
  };

  for (Eigen::Index i = 0; i < n; ++i) {
    hess(i, i) = (at(i, h[i], i, 0.0) - 2.0 * center + at(i, -h[i], i, 0.0)) / (h[i] * h[i]);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (at(i, h[i], j, h[j]) - at(i, h[i], j, -h[j]) -
                        at(i, -h[i], j, h[j]) + at(i, -h[i], j, -h[j])) /
                       (4.0 * h[i] * h[j]);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return 0.5 * (hess + hess.transpose());
}

}  // namespace good

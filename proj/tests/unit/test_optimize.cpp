#include <doctest.h>

#include <cmath>
#include <limits>

#include "good/errors.hpp"
#include "good/optimize.hpp"
#include "oracles.hpp"

using namespace good;
using good::testing::Gen;

namespace {
Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}
}  // namespace

TEST_CASE("maximize one-dimensional quadratic") {
  const auto r = maximize([](const Eigen::VectorXd& x) { return -(x[0] - 2) * (x[0] - 2); }, vec({0.0}));
  CHECK(r.converged);
  CHECK(std::abs(r.point[0] - 2.0) < 1e-6);
  CHECK(r.point.size() == 1);
}

TEST_CASE("maximize two-dimensional quadratic") {
  const auto r = maximize(
      [](const Eigen::VectorXd& x) { return -(x[0] - 1) * (x[0] - 1) - (x[1] + 3) * (x[1] + 3); },
      vec({0.0, 0.0}));
  CHECK(r.converged);
  CHECK(std::abs(r.point[0] - 1.0) < 1e-6);
  CHECK(std::abs(r.point[1] + 3.0) < 1e-6);
}

TEST_CASE("maximize respects an infeasibility wall") {
  const auto f = [](const Eigen::VectorXd& x) {
    return x[0] < 1.5 ? -(x[0] - 2) * (x[0] - 2) : -std::numeric_limits<double>::infinity();
  };
  const auto r = maximize(f, vec({0.0}));
  CHECK(r.point[0] < 1.5);
  CHECK(std::abs(r.point[0] - 1.5) < 1e-4);
}

TEST_CASE("maximize rejects an infeasible start") {
  const auto f = [](const Eigen::VectorXd&) { return -std::numeric_limits<double>::infinity(); };
  CHECK_THROWS_AS(maximize(f, vec({0.0})), DomainError);
  const auto g = [](const Eigen::VectorXd&) { return std::nan(""); };
  CHECK_THROWS_AS(maximize(g, vec({0.0})), DomainError);
}

TEST_CASE("maximize reports exhausted iterations") {
  OptimOptions opts;
  opts.max_iterations = 5;
  opts.restarts = 0;
  const auto r = maximize(
      [](const Eigen::VectorXd& x) { return -(x[0] - 100) * (x[0] - 100) - x[1] * x[1]; }, vec({0.0, 5.0}),
      opts);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations <= 5);
}

TEST_CASE("maximize Rosenbrock") {
  const auto r = maximize(
      [](const Eigen::VectorXd& x) {
        return -(100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2));
      },
      vec({-1.2, 1.0}));
  CHECK(r.converged);
  CHECK(std::abs(r.point[0] - 1.0) < 1e-4);
  CHECK(std::abs(r.point[1] - 1.0) < 1e-4);
}

TEST_CASE("maximize is invariant under positive affine rescaling") {
  const auto base = [](const Eigen::VectorXd& x) {
    return -std::pow(x[0] - 0.3, 2) - 2 * std::pow(x[1] + 1.7, 2) - 0.5 * x[0] * x[1];
  };
  const auto ref = maximize(base, vec({0.0, 0.0}));
  Gen gen(5);
  for (int i = 0; i < 10; ++i) {
    const double a = std::exp(gen.uniform(-5.0, 5.0));
    const double b = gen.uniform(-100.0, 100.0);
    const auto r = maximize([&](const Eigen::VectorXd& x) { return a * base(x) + b; }, vec({0.0, 0.0}));
    CAPTURE(a);
    CAPTURE(b);
    CHECK((r.point - ref.point).norm() < 1e-6);
  }
}

TEST_CASE("numeric_gradient examples") {
  const auto g1 = numeric_gradient([](const Eigen::VectorXd& x) { return x[0] * x[0]; }, vec({3.0}));
  CHECK(std::abs(g1[0] - 6.0) < 1e-6);
  const auto g2 = numeric_gradient([](const Eigen::VectorXd& x) { return x[0] * x[1]; }, vec({2.0, 5.0}));
  CHECK(std::abs(g2[0] - 5.0) < 1e-6);
  CHECK(std::abs(g2[1] - 2.0) < 1e-6);
}

TEST_CASE("numeric_gradient of a linear function is its coefficient vector") {
  // |f| stays O(1): the rounding floor of a step-1e-5 central difference is ~eps |f| / 1e-5
  Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index dim = gen.integer(1, 6);
    Eigen::VectorXd c(dim), p(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      c[i] = gen.uniform(-1.0, 1.0);
      p[i] = gen.uniform(-1.0, 1.0);
    }
    const auto g = numeric_gradient([&](const Eigen::VectorXd& x) { return c.dot(x) + 0.5; }, p);
    CHECK((g - c).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("numeric_hessian examples") {
  const auto h1 = numeric_hessian([](const Eigen::VectorXd& x) { return -x[0] * x[0]; }, vec({0.0}));
  CHECK(std::abs(h1(0, 0) + 2.0) < 1e-4);
  const auto h2 = numeric_hessian(
      [](const Eigen::VectorXd& x) { return -x[0] * x[0] - 3 * x[1] * x[1] + x[0] * x[1]; }, vec({0.0, 0.0}));
  CHECK(std::abs(h2(0, 0) + 2.0) < 1e-4);
  CHECK(std::abs(h2(0, 1) - 1.0) < 1e-4);
  CHECK(std::abs(h2(1, 0) - 1.0) < 1e-4);
  CHECK(std::abs(h2(1, 1) + 6.0) < 1e-4);
}

TEST_CASE("numeric_hessian of a quadratic form is its matrix and symmetric") {
  Gen gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index dim = gen.integer(1, 5);
    Eigen::MatrixXd a(dim, dim);
    Eigen::VectorXd p(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      p[i] = gen.uniform(-3.0, 3.0);
      for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = gen.uniform(-2.0, 2.0);
    }
    const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
    const auto h = numeric_hessian([&](const Eigen::VectorXd& x) { return 0.5 * x.dot(sym * x); }, p);
    CHECK((h - sym).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(h == h.transpose());
  }
}

TEST_CASE("non-finite probes are rejected") {
  const auto wall = [](const Eigen::VectorXd& x) {
    return x[0] < 1.0 ? -x[0] * x[0] : -std::numeric_limits<double>::infinity();
  };
  CHECK_THROWS_AS(numeric_gradient(wall, vec({1.0 - 1e-7})), NumericalError);
  CHECK_THROWS_AS(numeric_hessian(wall, vec({1.0 - 1e-7})), NumericalError);
  CHECK_NOTHROW(numeric_gradient(wall, vec({0.5})));
}

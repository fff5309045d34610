#include "good/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "good/errors.hpp"

namespace good {

namespace {

constexpr double kStirlingCutoff = 15.0;

// B_{2k} / (2k (2k-1)) for k = 1..8
constexpr double kStirlingCoefficients[] = {
    1.0 / 12.0,          -1.0 / 360.0,   1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

double stirling_log_gamma(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double correction = 0.0;
  double power = inv;
  for (double c : kStirlingCoefficients) {
    correction += c * power;
    power *= inv2;
  }
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + correction;
}

void require_log_z(double log_z, const char* who) {
  if (!(log_z < 0.0) || std::isnan(log_z)) {
    throw DomainError(std::string(who) + ": log_z must be < 0 (z in (0,1)), got " +
                      std::to_string(log_z));
  }
}

void require_finite_shape(double s, const char* who) {
  if (!std::isfinite(s)) {
    throw DomainError(std::string(who) + ": shape s must be finite");
  }
}

// Streaming log-sum-exp over terms
//   t_n = n log_z - s ln n (+ ln ln n when weighted)
// with Neumaier-compensated accumulation of exp(t_n - running_max).
//
// Stops when both the current term and a geometric bound on the remaining
// tail sit kSeriesLogTolerance nats below the accumulated sum. The bound uses
// r_n >= t_{k+1}/t_k for all k >= n, valid once r_n < 1 (i.e. past the peak).
struct SeriesResult {
  double log_sum;
  std::int64_t terms;
};

SeriesResult log_domain_series(double log_z, double s, bool log_weighted, const char* who) {
  const std::int64_t first = log_weighted ? 2 : 1;
  double running_max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double compensation = 0.0;

  for (std::int64_t n = first; n < first + kSeriesMaxTerms; ++n) {
    const double nd = static_cast<double>(n);
    const double ln_n = std::log(nd);
    double t = nd * log_z - s * ln_n;
    if (log_weighted) t += std::log(ln_n);

    if (t > running_max) {
      const double scale = std::exp(running_max - t);
      sum *= scale;
      compensation *= scale;
      running_max = t;
      t = 0.0;
    } else {
      t -= running_max;
    }
    const double term = std::exp(t);
    const double updated = sum + term;
    if (std::abs(sum) >= term) {
      compensation += (sum - updated) + term;
    } else {
      compensation += (term - updated) + sum;
    }
    sum = updated;

    double ratio_log = log_z + std::max(0.0, -s * std::log1p(1.0 / nd));
    if (log_weighted) ratio_log += std::log(std::log1p(nd) / ln_n);
    if (ratio_log < 0.0) {
      const double log_acc = std::log(sum + compensation);
      const double tail = t + ratio_log - std::log(-std::expm1(ratio_log));
      if (std::max(t, tail) < log_acc - kSeriesLogTolerance) {
        return {running_max + log_acc, n - first + 1};
      }
    }
  }
  throw NonConvergenceError(std::string(who) + ": series did not converge within " +
                            std::to_string(kSeriesMaxTerms) + " terms (log_z=" +
                            std::to_string(log_z) + ", s=" + std::to_string(s) + ")");
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: argument must be > 0, got " + std::to_string(x));
  }
  if (std::isinf(x)) return x;
  if (x >= kStirlingCutoff) return stirling_log_gamma(x);

  double product = 1.0;
  double shifted = x;
  while (shifted < kStirlingCutoff) {
    product *= shifted;
    shifted += 1.0;
  }
  return stirling_log_gamma(shifted) - std::log(product);
}

LogPolylogValue log_polylog_series(double log_z, double s) {
  require_log_z(log_z, "log_polylog_series");
  require_finite_shape(s, "log_polylog_series");
  const auto r = log_domain_series(log_z, s, false, "log_polylog_series");
  return {r.log_sum, PolylogRegime::Series, r.terms};
}

LogPolylogValue log_polylog_wood(double log_z, double s) {
  require_log_z(log_z, "log_polylog_wood");
  require_finite_shape(s, "log_polylog_wood");
  const double value = log_gamma(1.0 - s) + (s - 1.0) * std::log(-log_z);
  return {value, PolylogRegime::WoodAsymptotic, 0};
}

LogPolylogValue log_polylog(double log_z, double s) {
  if (s < kExtremeShapeThreshold) return log_polylog_wood(log_z, s);
  return log_polylog_series(log_z, s);
}

double log_polylog_ds_series(double log_z, double s) {
  require_log_z(log_z, "log_polylog_ds_series");
  require_finite_shape(s, "log_polylog_ds_series");
  return log_domain_series(log_z, s, true, "log_polylog_ds_series").log_sum;
}

namespace {

constexpr int kGammaMaxIterations = 10000;
constexpr double kGammaEps = 1e-16;

// P(a,x) by its power series; valid for x < a + 1.
double gamma_p_series(double a, double x, double log_prefactor) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < kGammaMaxIterations; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kGammaEps) {
      return sum * std::exp(log_prefactor);
    }
  }
  throw NonConvergenceError("gamma_q: series failed to converge");
}

// Q(a,x) by modified Lentz continued fraction; valid for x >= a + 1.
double gamma_q_fraction(double a, double x, double log_prefactor) {
  constexpr double tiny = std::numeric_limits<double>::min() / kGammaEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kGammaMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kGammaEps) {
      return std::exp(log_prefactor) * h;
    }
  }
  throw NonConvergenceError("gamma_q: continued fraction failed to converge");
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw DomainError("gamma_q: need a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double log_prefactor = a * std::log(x) - x - log_gamma(a);
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x, log_prefactor);
  return gamma_q_fraction(a, x, log_prefactor);
}

double chi_square_upper(double x, double df) {
  if (!(df > 0.0)) throw DomainError("chi_square_upper: df must be > 0");
  if (!(x > 0.0)) return 1.0;
  return gamma_q(0.5 * df, 0.5 * x);
}

double normal_two_sided(double z) {
  return std::erfc(std::abs(z) / std::numbers::sqrt2);
}

}  // namespace good

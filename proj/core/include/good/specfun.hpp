#pragma once

#include <cstdint>

namespace good {

/// Shape values strictly below this use the asymptotic normalizer.
inline constexpr double kExtremeShapeThreshold = -120.0;

/// Log-domain series stops once a term falls this far (in nats) below the sum.
inline constexpr double kSeriesLogTolerance = 36.0;

inline constexpr std::int64_t kSeriesMaxTerms = 10'000'000;

enum class PolylogRegime { Series, WoodAsymptotic };

/// Natural log of the polylogarithm F(z,s) = sum_{n>=1} z^n / n^s.
struct LogPolylogValue {
  double value = 0.0;
  PolylogRegime regime = PolylogRegime::Series;
  std::int64_t terms_used = 0;
};

/// ln Gamma(x) for x > 0. Stirling series on x >= 15 with upward recurrence below.
double log_gamma(double x);

/// Direct log-domain summation of ln F(z,s), z = exp(log_z), log_z < 0.
LogPolylogValue log_polylog_series(double log_z, double s);

/// Large-negative-s approximation ln F(z,s) ~ ln Gamma(1-s) + (s-1) ln(-ln z).
LogPolylogValue log_polylog_wood(double log_z, double s);

/// Entry point used everywhere else: Wood form when s < kExtremeShapeThreshold.
LogPolylogValue log_polylog(double log_z, double s);

/// ln of sum_{n>=2} ln(n) z^n / n^s, i.e. ln(-dF/ds). Same stopping rule as the
/// polylog series.
double log_polylog_ds_series(double log_z, double s);

/// Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0.
double gamma_q(double a, double x);

/// Upper tail P(X > x) of a chi-square variable with df degrees of freedom.
double chi_square_upper(double x, double df);

/// Two-sided standard-normal p-value 2 * P(Z > |z|).
double normal_two_sided(double z);

}  // namespace good

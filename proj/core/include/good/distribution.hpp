#pragma once

#include <cstdint>
#include <vector>

namespace good {

/// Parameters of the Good distribution, P(X = x) = z^{x+1} (x+1)^{-s} / F(z,s)
/// on x = 0, 1, 2, ... The scale is stored as log z so that very small z
/// (z ~ 1e-5 in under-dispersed fits) keeps full precision.
struct GoodParams {
  double log_z = 0.0;
  double s = 0.0;

  static GoodParams from_z(double z, double s);
  static GoodParams from_log_z(double log_z, double s);

  double z() const;
  bool valid() const noexcept;
  /// Throws DomainError unless log_z < 0 and s is finite.
  void validate() const;
};

/// Largest number of support points any accumulation (cdf, quantile) visits.
inline constexpr std::int64_t kSupportCap = 10'000'000;

/// Default truncation probability of the sampler's quantile window.
inline constexpr double kDefaultSampleThreshold = 1e-6;

double log_pmf(std::int64_t x, const GoodParams& params);
double pmf(std::int64_t x, const GoodParams& params);

/// P(X <= q) when lower_tail, else P(X > q) computed as 1 - P(X <= q).
double cdf(std::int64_t q, const GoodParams& params, bool lower_tail = true);

/// Smallest x with P(X <= x) >= p (or >= 1 - p when !lower_tail).
/// Targets above 1 - 1e-15 are clamped there; the search also ends once the
/// remaining tail can no longer change the accumulated mass.
std::int64_t quantile(double p, const GoodParams& params, bool lower_tail = true);

/// Inverse-cdf sampling over the window [quantile(th), quantile(1 - th)].
/// Uniforms come from std::mt19937_64 seeded with `seed`, using the top 53
/// bits of each draw, so output is reproducible across platforms.
std::vector<std::int64_t> sample(std::size_t n, const GoodParams& params, std::uint64_t seed,
                                 double th = kDefaultSampleThreshold);

double mean(const GoodParams& params);
double variance(const GoodParams& params);
/// E[X^k] from the alternating combination of shifted normalizers.
double raw_moment(int k, const GoodParams& params);
double dispersion_index(const GoodParams& params);

/// E[t^X]; requires 0 < t and t z < 1.
double pgf(double t, const GoodParams& params);
/// E[exp(tX)]; requires z exp(t) < 1.
double mgf(double t, const GoodParams& params);

}  // namespace good

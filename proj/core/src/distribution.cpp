#include "good/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "good/errors.hpp"
#include "good/specfun.hpp"

namespace good {

GoodParams GoodParams::from_z(double z, double s) {
  if (!(z > 0.0 && z < 1.0)) {
    throw DomainError("Good parameter z must lie in (0,1), got " + std::to_string(z));
  }
  return from_log_z(std::log(z), s);
}

GoodParams GoodParams::from_log_z(double log_z, double s) {
  GoodParams p{log_z, s};
  p.validate();
  return p;
}

double GoodParams::z() const { return std::exp(log_z); }

bool GoodParams::valid() const noexcept { return log_z < 0.0 && std::isfinite(s); }

void GoodParams::validate() const {
  if (!(log_z < 0.0)) {
    throw DomainError("Good parameter log_z must be < 0, got " + std::to_string(log_z));
  }
  if (!std::isfinite(s)) throw DomainError("Good parameter s must be finite");
}

namespace {

// Tail bound below the accumulated mass, in nats, at which further terms can
// no longer change a double-precision sum near 1.
constexpr double kNegligibleTailNats = 40.0;
constexpr double kQuantileCeiling = 1.0 - 1e-15;

// Walks the support in increasing x, accumulating P(X <= x) in linear space.
class MassWalker {
public:
  explicit MassWalker(const GoodParams& params)
      : params_(params), log_norm_(log_polylog(params.log_z, params.s).value) {}

  double log_pmf(std::int64_t x) const {
    const double n = static_cast<double>(x) + 1.0;
    return n * params_.log_z - params_.s * std::log(n) - log_norm_;
  }

  /// Adds pmf(x) for the next x and returns the new cumulative mass.
  double step() {
    ++x_;
    last_log_pmf_ = log_pmf(x_);
    mass_ += std::exp(last_log_pmf_);
    return mass_;
  }

  std::int64_t x() const { return x_; }
  double mass() const { return mass_; }

  /// True once a geometric bound on sum_{y > x} pmf(y) is negligible.
  bool tail_negligible() const {
    if (x_ < 0 || mass_ <= 0.0) return false;
    const double n = static_cast<double>(x_) + 1.0;
    const double ratio_log = params_.log_z + std::max(0.0, -params_.s * std::log1p(1.0 / n));
    if (ratio_log >= 0.0) return false;
    const double tail = last_log_pmf_ + ratio_log - std::log(-std::expm1(ratio_log));
    return std::max(tail, last_log_pmf_) < std::log(mass_) - kNegligibleTailNats;
  }

private:
  GoodParams params_;
  double log_norm_;
  std::int64_t x_ = -1;
  double mass_ = 0.0;
  double last_log_pmf_ = 0.0;
};

void require_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(who) + ": probability must lie in [0,1], got " +
                      std::to_string(p));
  }
}

double lower_cdf(std::int64_t q, const GoodParams& params) {
  if (q < 0) return 0.0;
  MassWalker walker(params);
  while (walker.x() < q) {
    if (walker.x() + 1 >= kSupportCap) {
      throw NonConvergenceError("cdf: support cap of " + std::to_string(kSupportCap) +
                                " points exceeded");
    }
    walker.step();
    if (walker.tail_negligible()) break;
  }
  return walker.mass();
}

// Shared by quantile() and sample(): walks until mass >= target.
std::int64_t search_quantile(double target, MassWalker& walker) {
  target = std::min(target, kQuantileCeiling);
  if (walker.x() >= 0 && walker.mass() >= target) return walker.x();
  while (true) {
    if (walker.x() + 1 >= kSupportCap) {
      throw NonConvergenceError("quantile: support cap of " + std::to_string(kSupportCap) +
                                " points exceeded before reaching the target mass");
    }
    if (walker.step() >= target) return walker.x();
    if (walker.tail_negligible()) return walker.x();
  }
}

}  // namespace

double log_pmf(std::int64_t x, const GoodParams& params) {
  params.validate();
  if (x < 0) throw DomainError("log_pmf: x must be >= 0, got " + std::to_string(x));
  return MassWalker(params).log_pmf(x);
}

double pmf(std::int64_t x, const GoodParams& params) { return std::exp(log_pmf(x, params)); }

double cdf(std::int64_t q, const GoodParams& params, bool lower_tail) {
  params.validate();
  const double lower = lower_cdf(q, params);
  return lower_tail ? lower : 1.0 - lower;
}

std::int64_t quantile(double p, const GoodParams& params, bool lower_tail) {
  params.validate();
  require_probability(p, "quantile");
  const double target = lower_tail ? p : 1.0 - p;
  if (target <= 0.0) return 0;
  MassWalker walker(params);
  return search_quantile(target, walker);
}

std::vector<std::int64_t> sample(std::size_t n, const GoodParams& params, std::uint64_t seed,
                                 double th) {
  params.validate();
  if (!(th > 0.0 && th < 0.5)) {
    throw DomainError("sample: th must lie in (0, 0.5), got " + std::to_string(th));
  }

  MassWalker walker(params);
  const std::int64_t lo = search_quantile(th, walker);
  std::vector<double> table{walker.mass()};
  const double upper = std::min(1.0 - th, kQuantileCeiling);
  while (walker.mass() < upper && !walker.tail_negligible()) {
    if (walker.x() + 1 >= kSupportCap) {
      throw NonConvergenceError("sample: support cap exceeded while tabulating the cdf");
    }
    table.push_back(walker.step());
  }
  const std::int64_t hi = walker.x();

  std::mt19937_64 engine(seed);
  std::vector<std::int64_t> draws;
  draws.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    const auto it = std::lower_bound(table.begin(), table.end(), u);
    const auto offset = static_cast<std::int64_t>(it - table.begin());
    draws.push_back(std::min(lo + offset, hi));
  }
  return draws;
}

namespace {

// ln F(z, s - m) - ln F(z, s)
double log_shift_ratio(const GoodParams& params, int m, double log_norm) {
  return log_polylog(params.log_z, params.s - m).value - log_norm;
}

}  // namespace

double mean(const GoodParams& params) {
  params.validate();
  const double log_norm = log_polylog(params.log_z, params.s).value;
  return std::exp(log_shift_ratio(params, 1, log_norm)) - 1.0;
}

double variance(const GoodParams& params) {
  params.validate();
  const double log_norm = log_polylog(params.log_z, params.s).value;
  const double r1 = log_shift_ratio(params, 1, log_norm);
  const double r2 = log_shift_ratio(params, 2, log_norm);
  return std::exp(r2) - std::exp(2.0 * r1);
}

double raw_moment(int k, const GoodParams& params) {
  params.validate();
  if (k < 1) throw DomainError("raw_moment: order k must be >= 1");
  const double log_norm = log_polylog(params.log_z, params.s).value;
  double total = 0.0;
  double binom = 1.0;
  for (int m = 0; m <= k; ++m) {
    const double sign = ((m + k) % 2 == 0) ? 1.0 : -1.0;
    total += sign * binom * std::exp(log_shift_ratio(params, m, log_norm));
    binom = binom * (k - m) / (m + 1);
  }
  return total;
}

double dispersion_index(const GoodParams& params) {
  const double mu = mean(params);
  if (!(mu > 0.0)) throw DomainError("dispersion_index: mean is not positive");
  return variance(params) / mu;
}

double pgf(double t, const GoodParams& params) {
  params.validate();
  if (!(t > 0.0)) {
    throw DomainError("pgf: t must be > 0 (negative arguments need the alternating series)");
  }
  const double log_t = std::log(t);
  if (!(params.log_z + log_t < 0.0)) throw DomainError("pgf: requires t * z < 1");
  const double log_norm = log_polylog(params.log_z, params.s).value;
  return std::exp(log_polylog(params.log_z + log_t, params.s).value - log_t - log_norm);
}

double mgf(double t, const GoodParams& params) {
  params.validate();
  if (!(params.log_z + t < 0.0)) throw DomainError("mgf: requires z * exp(t) < 1");
  const double log_norm = log_polylog(params.log_z, params.s).value;
  return std::exp(log_polylog(params.log_z + t, params.s).value - t - log_norm);
}

}  // namespace good

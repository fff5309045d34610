#include "good/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "good/distribution.hpp"
#include "good/errors.hpp"
#include "good/specfun.hpp"

namespace good {

// ---------------------------------------------------------------------------
// LinkFunction

LinkFunction LinkFunction::parse(std::string_view name) {
  if (name == "identity") return LinkFunction(LinkKind::Identity);
  if (name == "log") return LinkFunction(LinkKind::Log);
  if (name == "logit") return LinkFunction(LinkKind::Logit);
  throw DomainError("unknown link '" + std::string(name) + "' (expected identity, log or logit)");
}

std::string_view LinkFunction::name() const {
  switch (kind_) {
    case LinkKind::Identity: return "identity";
    case LinkKind::Log: return "log";
    case LinkKind::Logit: return "logit";
  }
  return "?";
}

double LinkFunction::inverse(double eta) const {
  switch (kind_) {
    case LinkKind::Identity: return eta;
    case LinkKind::Log: return std::exp(eta);
    case LinkKind::Logit: return 1.0 / (1.0 + std::exp(-eta));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double LinkFunction::log_inverse(double eta) const {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  double log_z = nan;
  switch (kind_) {
    case LinkKind::Identity:
      log_z = (eta > 0.0 && eta < 1.0) ? std::log(eta) : nan;
      break;
    case LinkKind::Log:
      log_z = eta;
      break;
    case LinkKind::Logit:
      // ln(1 / (1 + e^{-eta})), stable for both signs of eta
      log_z = eta >= 0.0 ? -std::log1p(std::exp(-eta)) : eta - std::log1p(std::exp(eta));
      break;
  }
  return (log_z < 0.0 && std::isfinite(log_z)) ? log_z : nan;
}

double LinkFunction::derivative(double eta) const {
  switch (kind_) {
    case LinkKind::Identity: return 1.0;
    case LinkKind::Log: return std::exp(eta);
    case LinkKind::Logit: {
      const double z = inverse(eta);
      return z * (1.0 - z);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double LinkFunction::log_derivative(double eta) const {
  switch (kind_) {
    case LinkKind::Identity: return 1.0 / eta;
    case LinkKind::Log: return 1.0;
    case LinkKind::Logit: return 1.0 - inverse(eta);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------
// ModelData

ModelData ModelData::intercept_only(std::vector<std::int64_t> response, std::string response_name) {
  ModelData data;
  data.covariates = Eigen::MatrixXd(static_cast<Eigen::Index>(response.size()), 0);
  data.response = std::move(response);
  data.response_name = std::move(response_name);
  return data;
}

void ModelData::validate() const {
  if (response.empty()) throw DataError("model data has no observations");
  for (std::size_t i = 0; i < response.size(); ++i) {
    if (response[i] < 0) {
      throw DataError("response value " + std::to_string(response[i]) + " at observation " +
                      std::to_string(i + 1) + " is negative");
    }
  }
  if (covariates.rows() != static_cast<Eigen::Index>(response.size())) {
    throw DataError("covariate matrix has " + std::to_string(covariates.rows()) +
                    " rows but there are " + std::to_string(response.size()) + " responses");
  }
  if (!covariate_names.empty() &&
      static_cast<Eigen::Index>(covariate_names.size()) != covariates.cols()) {
    throw DataError("covariate names do not match the number of covariate columns");
  }
  for (Eigen::Index j = 0; j < covariates.cols(); ++j) {
    const auto col = covariates.col(j);
    const std::string label =
        covariate_names.empty() ? "column " + std::to_string(j + 1) : covariate_names[j];
    if (!col.allFinite()) throw DataError("covariate '" + label + "' has non-finite entries");
    if (col.maxCoeff() == col.minCoeff()) {
      throw DataError("covariate '" + label + "' has zero variance");
    }
  }
}

ModelData ModelData::without_covariates() const {
  return intercept_only(response, response_name);
}

// ---------------------------------------------------------------------------
// Likelihood

GoodLikelihood::GoodLikelihood(const ModelData& data, LinkFunction link)
    : link_(link), n_beta_(data.p() + 1) {
  const auto n = static_cast<Eigen::Index>(data.n());
  if (data.covariates.rows() != n) {
    throw DimensionError("likelihood: covariate rows do not match the response length");
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto row_less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index j = 0; j < data.p(); ++j) {
      const double va = data.covariates(a, j);
      const double vb = data.covariates(b, j);
      if (va != vb) return va < vb;
    }
    return false;
  };
  std::stable_sort(order.begin(), order.end(), row_less);

  for (std::size_t k = 0; k < order.size(); ++k) {
    const Eigen::Index i = order[k];
    if (groups_.empty() || row_less(order[k - 1], i)) {
      groups_.push_back({data.covariates.row(i).transpose(), 0.0, 0.0, 0.0});
    }
    auto& g = groups_.back();
    const double shifted = static_cast<double>(data.response[static_cast<std::size_t>(i)]) + 1.0;
    g.count += 1.0;
    g.sum_shifted += shifted;
    g.sum_log_shifted += std::log(shifted);
  }
}

double GoodLikelihood::operator()(const Eigen::VectorXd& beta, double s) const {
  if (beta.size() != n_beta_) {
    throw DimensionError("likelihood: beta has length " + std::to_string(beta.size()) +
                         ", expected " + std::to_string(n_beta_));
  }
  constexpr double infeasible = -std::numeric_limits<double>::infinity();
  if (!std::isfinite(s)) return infeasible;
  double total = 0.0;
  for (const auto& g : groups_) {
    const double eta = beta[0] + g.row.dot(beta.tail(n_beta_ - 1));
    const double log_z = link_.log_inverse(eta);
    if (std::isnan(log_z)) return infeasible;
    const double log_norm = log_polylog(log_z, s).value;
    total += g.sum_shifted * log_z - s * g.sum_log_shifted - g.count * log_norm;
  }
  return total;
}

double GoodLikelihood::operator()(const Eigen::VectorXd& theta) const {
  if (theta.size() != n_beta_ + 1) {
    throw DimensionError("likelihood: parameter vector has wrong length");
  }
  return (*this)(Eigen::VectorXd(theta.tail(n_beta_)), theta[0]);
}

double log_likelihood(const ModelData& data, const Eigen::VectorXd& beta, double s,
                      LinkFunction link) {
  if (beta.size() != data.p() + 1) {
    throw DimensionError("log_likelihood: beta has length " + std::to_string(beta.size()) +
                         ", expected " + std::to_string(data.p() + 1));
  }
  return GoodLikelihood(data, link)(beta, s);
}

// ---------------------------------------------------------------------------
// Fitting

StartValues default_start(LinkFunction link, Eigen::Index p) {
  StartValues start{-2.0, Eigen::VectorXd::Zero(p + 1)};
  switch (link.kind()) {
    case LinkKind::Identity: start.beta[0] = 0.5; break;
    case LinkKind::Log: start.beta[0] = std::log(0.5); break;
    case LinkKind::Logit: start.beta[0] = 0.0; break;
  }
  return start;
}

Eigen::VectorXd FitResult::parameters() const {
  Eigen::VectorXd theta(beta_hat.size() + 1);
  theta[0] = s_hat;
  theta.tail(beta_hat.size()) = beta_hat;
  return theta;
}

namespace {

std::vector<double> point_as_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

Eigen::MatrixXd invert_information(const Eigen::MatrixXd& hessian) {
  const Eigen::MatrixXd information = -hessian;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(information);
  const double rcond = lu.rcond();
  if (!lu.isInvertible() || !(rcond > 1e-14)) {
    std::ostringstream msg;
    msg << "observed information matrix is singular (reciprocal condition " << rcond << ")";
    throw SingularMatrixError(msg.str(), rcond);
  }
  Eigen::MatrixXd vcov = lu.inverse();
  vcov = 0.5 * (vcov + vcov.transpose());
  if ((vcov.diagonal().array() <= 0.0).any()) {
    std::ostringstream msg;
    msg << "observed information is not positive definite (reciprocal condition " << rcond
        << ")";
    throw SingularMatrixError(msg.str(), rcond);
  }
  return vcov;
}

void check_interior(const ModelData& data, const Eigen::VectorXd& beta, LinkFunction link,
                    double margin, const Eigen::VectorXd& theta, double value) {
  for (Eigen::Index i = 0; i < data.covariates.rows(); ++i) {
    const double eta = beta[0] + data.covariates.row(i).dot(beta.tail(beta.size() - 1));
    const double log_z = link.log_inverse(eta);
    const double z = std::exp(log_z);
    if (std::isnan(log_z) || z < margin || z > 1.0 - margin) {
      throw NonConvergenceError(
          "maximum likelihood estimate lies on the boundary of the parameter space (z_" +
              std::to_string(i + 1) + " = " + std::to_string(z) + ")",
          point_as_vector(theta), value);
    }
  }
}

std::vector<double> compute_fitted_means(const ModelData& data, double s,
                                         const Eigen::VectorXd& beta, LinkFunction link) {
  std::vector<double> means(data.n());
  for (Eigen::Index i = 0; i < data.covariates.rows(); ++i) {
    means[static_cast<std::size_t>(i)] =
        fitted_mean(s, beta, link, data.covariates.row(i).transpose());
  }
  return means;
}

}  // namespace

FitResult fit(const ModelData& data, LinkFunction link, const std::optional<StartValues>& start,
              const FitOptions& options) {
  data.validate();
  const GoodLikelihood likelihood(data, link);
  const StartValues init = start.value_or(default_start(link, data.p()));
  if (init.beta.size() != data.p() + 1) {
    throw DimensionError("fit: start vector must have " + std::to_string(data.p() + 2) +
                         " entries (s, beta_0..beta_p)");
  }
  Eigen::VectorXd theta0(init.beta.size() + 1);
  theta0[0] = init.s;
  theta0.tail(init.beta.size()) = init.beta;
  if (!std::isfinite(likelihood(theta0))) {
    throw DomainError("fit: start values are infeasible (some z_i outside (0,1))");
  }

  const Objective objective = [&](const Eigen::VectorXd& theta) { return likelihood(theta); };
  const OptimResult opt = maximize(objective, theta0, options.optim);
  if (!opt.converged) {
    throw NonConvergenceError("fit: optimizer did not converge in " +
                                  std::to_string(opt.iterations) + " iterations",
                              point_as_vector(opt.point), opt.value);
  }

  FitResult result;
  result.s_hat = opt.point[0];
  result.beta_hat = opt.point.tail(opt.point.size() - 1);
  check_interior(data, result.beta_hat, link, options.boundary_margin, opt.point, opt.value);

  result.link = link;
  result.loglik = opt.value;
  result.hessian = numeric_hessian(objective, opt.point);
  result.vcov = invert_information(result.hessian);
  result.fitted_means = compute_fitted_means(data, result.s_hat, result.beta_hat, link);
  result.n = static_cast<std::int64_t>(data.n());
  result.n_params = static_cast<int>(opt.point.size());
  result.covariate_names = data.covariate_names;
  result.response_name = data.response_name;
  result.iterations = opt.iterations;
  return result;
}

FitResult fit_fixed_s(const ModelData& data, double s_fixed, LinkFunction link,
                      const FitOptions& options) {
  data.validate();
  if (!std::isfinite(s_fixed)) throw DomainError("fit_fixed_s: s must be finite");
  const GoodLikelihood likelihood(data, link);
  const Eigen::VectorXd beta0 = default_start(link, data.p()).beta;

  const Objective objective = [&](const Eigen::VectorXd& beta) {
    return likelihood(beta, s_fixed);
  };
  const OptimResult opt = maximize(objective, beta0, options.optim);
  Eigen::VectorXd theta(opt.point.size() + 1);
  theta[0] = s_fixed;
  theta.tail(opt.point.size()) = opt.point;
  if (!opt.converged) {
    throw NonConvergenceError("fit_fixed_s: optimizer did not converge in " +
                                  std::to_string(opt.iterations) + " iterations",
                              point_as_vector(theta), opt.value);
  }
  check_interior(data, opt.point, link, options.boundary_margin, theta, opt.value);

  FitResult result;
  result.s_hat = s_fixed;
  result.s_fixed = true;
  result.beta_hat = opt.point;
  result.link = link;
  result.loglik = opt.value;
  result.hessian = numeric_hessian(objective, opt.point);
  result.vcov = invert_information(result.hessian);
  result.fitted_means = compute_fitted_means(data, s_fixed, result.beta_hat, link);
  result.n = static_cast<std::int64_t>(data.n());
  result.n_params = static_cast<int>(opt.point.size());
  result.covariate_names = data.covariate_names;
  result.response_name = data.response_name;
  result.iterations = opt.iterations;
  return result;
}

// ---------------------------------------------------------------------------
// Inference

std::vector<WaldRow> wald_table(const FitResult& fit) {
  const Eigen::Index offset = fit.beta_offset();
  if (fit.vcov.rows() != fit.beta_hat.size() + offset) {
    throw DimensionError("wald_table: vcov does not match the parameter vector");
  }
  std::vector<WaldRow> rows;
  auto push = [&](std::string name, double estimate, Eigen::Index index) {
    const double var = fit.vcov(index, index);
    if (!(var > 0.0)) throw SingularMatrixError("wald_table: non-positive variance for " + name, 0.0);
    const double se = std::sqrt(var);
    const double z = estimate / se;
    rows.push_back({std::move(name), estimate, se, z, normal_two_sided(z)});
  };
  if (!fit.s_fixed) push("s", fit.s_hat, 0);
  push("(Intercept)", fit.beta_hat[0], offset);
  for (Eigen::Index j = 1; j < fit.beta_hat.size(); ++j) {
    const auto k = static_cast<std::size_t>(j - 1);
    std::string name = k < fit.covariate_names.size() ? fit.covariate_names[k]
                                                      : "x" + std::to_string(j);
    push(std::move(name), fit.beta_hat[j], offset + j);
  }
  return rows;
}

TransformedIntercept transformed_intercept(const FitResult& fit) {
  if (fit.beta_hat.size() != 1) {
    throw DomainError("transformed_intercept: only defined for intercept-only fits");
  }
  const double eta = fit.beta_hat[0];
  const Eigen::Index k = fit.beta_offset();
  const double se_eta = std::sqrt(fit.vcov(k, k));
  return {fit.link.inverse(eta), se_eta * std::abs(fit.link.derivative(eta))};
}

LrtResult lrt(const FitResult& null_fit, const FitResult& alt_fit, std::string null_label,
              std::string alt_label) {
  constexpr double kNestingTolerance = 1e-8;
  const int df = alt_fit.n_params - null_fit.n_params;
  if (df <= 0) {
    throw DomainError("lrt: null model must have fewer parameters than the alternative");
  }
  const double raw = 2.0 * (alt_fit.loglik - null_fit.loglik);
  if (raw < -kNestingTolerance) {
    throw DomainError("lrt: null log-likelihood exceeds the alternative; models are not nested");
  }
  LrtResult r;
  r.null_label = std::move(null_label);
  r.alt_label = std::move(alt_label);
  r.df = df;
  r.statistic = std::max(0.0, raw);
  r.p_value = chi_square_upper(r.statistic, df);
  r.loglik_null = null_fit.loglik;
  r.loglik_alt = alt_fit.loglik;
  r.n_params_null = null_fit.n_params;
  r.n_params_alt = alt_fit.n_params;
  return r;
}

double aic(const FitResult& fit) { return -2.0 * fit.loglik + 2.0 * fit.n_params; }

double bic(const FitResult& fit) {
  return -2.0 * fit.loglik + fit.n_params * std::log(static_cast<double>(fit.n));
}

// ---------------------------------------------------------------------------
// Predictions

namespace {

double linear_predictor(const Eigen::VectorXd& beta, const Eigen::VectorXd& row) {
  if (row.size() != beta.size() - 1) {
    throw DimensionError("covariate row has " + std::to_string(row.size()) +
                         " entries, expected " + std::to_string(beta.size() - 1));
  }
  return beta[0] + row.dot(beta.tail(beta.size() - 1));
}

double feasible_log_z(LinkFunction link, double eta, const char* who) {
  const double log_z = link.log_inverse(eta);
  if (std::isnan(log_z)) {
    throw DomainError(std::string(who) + ": linear predictor " + std::to_string(eta) +
                      " maps outside z in (0,1)");
  }
  return log_z;
}

}  // namespace

double fitted_mean(double s, const Eigen::VectorXd& beta, LinkFunction link,
                   const Eigen::VectorXd& covariate_row) {
  const double eta = linear_predictor(beta, covariate_row);
  return mean(GoodParams{feasible_log_z(link, eta, "fitted_mean"), s});
}

Eigen::VectorXd mean_gradient(double s, const Eigen::VectorXd& beta, LinkFunction link,
                              const Eigen::VectorXd& covariate_row) {
  const double eta = linear_predictor(beta, covariate_row);
  const double log_z = feasible_log_z(link, eta, "mean_gradient");

  const double l0 = log_polylog(log_z, s).value;
  const double l1 = log_polylog(log_z, s - 1.0).value;
  const double l2 = log_polylog(log_z, s - 2.0).value;
  // ln(-dF(z,s)/ds) and ln(-dF(z,s-1)/ds)
  const double d0 = log_polylog_ds_series(log_z, s);
  const double d1 = log_polylog_ds_series(log_z, s - 1.0);

  Eigen::VectorXd grad(beta.size() + 1);
  // quotient rule on F(z,s-1)/F(z,s)
  grad[0] = std::exp(l1 + d0 - 2.0 * l0) - std::exp(d1 - l0);
  // dg/dz = (F(z,s-2)F(z,s) - F(z,s-1)^2) / (z F(z,s)^2) = Var / z
  const double var = std::exp(l2 - l0) - std::exp(2.0 * (l1 - l0));
  const double scale = var * link.log_derivative(eta);
  grad[1] = scale;
  for (Eigen::Index j = 0; j < covariate_row.size(); ++j) grad[j + 2] = scale * covariate_row[j];
  return grad;
}

PredictionResult predict_with_se(const FitResult& fit, const Eigen::MatrixXd& new_covariates) {
  if (new_covariates.cols() != fit.beta_hat.size() - 1) {
    throw DimensionError("predict: new data has " + std::to_string(new_covariates.cols()) +
                         " covariate columns, the fit has " +
                         std::to_string(fit.beta_hat.size() - 1));
  }
  const Eigen::Index offset = fit.beta_offset();
  PredictionResult out;
  out.fit.reserve(static_cast<std::size_t>(new_covariates.rows()));
  out.se_fit.reserve(static_cast<std::size_t>(new_covariates.rows()));
  for (Eigen::Index i = 0; i < new_covariates.rows(); ++i) {
    const Eigen::VectorXd row = new_covariates.row(i).transpose();
    out.fit.push_back(fitted_mean(fit.s_hat, fit.beta_hat, fit.link, row));
    const Eigen::VectorXd full = mean_gradient(fit.s_hat, fit.beta_hat, fit.link, row);
    const Eigen::VectorXd g = full.tail(full.size() - 1 + offset);
    const double var = g.dot(fit.vcov * g);
    out.se_fit.push_back(std::sqrt(std::max(0.0, var)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Summary

double sorted_quantile(const std::vector<double>& sorted, double prob) {
  if (sorted.empty()) throw DomainError("sorted_quantile: empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string format_p(double p) {
  if (p < 2.22e-16) return "< 2.22e-16";
  return fmt("%.6g", p);
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void write_lrt(std::ostream& os, const LrtResult& t) {
  os << "Model 1: " << t.null_label << "\n";
  os << "Model 2: " << t.alt_label << "\n";
  os << "  #Df    LogLik  Df       LRT     p.value\n";
  os << "1 " << pad_left(std::to_string(t.n_params_null), 4) << pad_left(fmt("%.2f", t.loglik_null), 10)
     << "\n";
  os << "2 " << pad_left(std::to_string(t.n_params_alt), 4) << pad_left(fmt("%.2f", t.loglik_alt), 10)
     << pad_left(std::to_string(t.df), 4) << pad_left(fmt("%.4f", t.statistic), 10)
     << pad_left(format_p(t.p_value), 12) << "\n";
}

std::string formula_of(const std::string& response, const std::vector<std::string>& names) {
  std::string f = response + " ~ ";
  if (names.empty()) return f + "1";
  for (std::size_t j = 0; j < names.size(); ++j) f += (j ? " + " : "") + names[j];
  return f;
}

}  // namespace

SummaryReport summary_report(const FitResult& fit, const ModelData& data,
                             const FitOptions& options) {
  SummaryReport report;

  std::vector<double> residuals(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) {
    residuals[i] = static_cast<double>(data.response[i]) - fit.fitted_means.at(i);
  }
  std::sort(residuals.begin(), residuals.end());
  const double probs[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t k = 0; k < 5; ++k) report.residual_quantiles[k] = sorted_quantile(residuals, probs[k]);

  report.coefficients = wald_table(fit);
  const bool intercept_only = fit.beta_hat.size() == 1;
  if (intercept_only) report.transformed = transformed_intercept(fit);

  if (!fit.s_fixed) {
    const auto run_test = [&](auto&& null_fit, const std::string& null_label,
                              const std::string& alt_label) {
      try {
        report.tests.push_back(lrt(null_fit(), fit, null_label, alt_label));
      } catch (const std::exception& e) {
        report.test_failures.push_back(null_label + ": " + e.what());
      }
    };
    if (intercept_only) {
      run_test([&] { return fit_fixed_s(data, 1.0, fit.link, options); }, "logarithmic (s=1)", "good");
      run_test([&] { return fit_fixed_s(data, 0.0, fit.link, options); }, "geometric (s=0)", "good");
    } else {
      run_test([&] { return good::fit(data.without_covariates(), fit.link, std::nullopt, options); },
               formula_of(data.response_name, {}),
               formula_of(data.response_name, fit.covariate_names));
    }
  }

  report.loglik = fit.loglik;
  report.aic = aic(fit);
  report.bic = bic(fit);

  std::ostringstream os;
  os << "Call:\n";
  os << "good fit: " << formula_of(fit.response_name, fit.covariate_names) << ", link = \""
     << fit.link.name() << "\"\n";
  os << "--\n";
  os << "Response Residuals:\n";
  const char* labels[] = {"Min", "1Q", "Median", "3Q", "Max"};
  for (const char* l : labels) os << pad_left(l, 12);
  os << "\n";
  for (double q : report.residual_quantiles) os << pad_left(fmt("%.6g", q), 12);
  os << "\n--\n";

  os << "Coefficients:\n";
  os << pad_right("", 14) << pad_left("Estimate", 13) << pad_left("Std. Error", 13)
     << pad_left("z value", 13) << pad_left("p-value", 14) << "\n";
  for (const auto& row : report.coefficients) {
    os << pad_right(row.name, 14) << pad_left(fmt("%.6g", row.estimate), 13)
       << pad_left(fmt("%.6g", row.std_error), 13) << pad_left(fmt("%.6g", row.z_value), 13)
       << pad_left(format_p(row.p_value), 14) << "\n";
  }
  os << "--\n";

  if (report.transformed) {
    os << "Transformed intercept-only parameter\n";
    os << pad_right("", 4) << pad_left("Estimate", 13) << pad_left("Std. Error", 13) << "\n";
    os << pad_right("z", 4) << pad_left(fmt("%.6g", report.transformed->z_hat), 13)
       << pad_left(fmt("%.6g", report.transformed->se), 13) << "\n";
    os << "--\n";
  }

  if (!report.tests.empty() || !report.test_failures.empty()) {
    os << "Likelihood ratio test:\n";
    for (std::size_t k = 0; k < report.tests.size(); ++k) {
      if (k) os << "\n";
      write_lrt(os, report.tests[k]);
    }
    for (const auto& failure : report.test_failures) os << "unavailable: " << failure << "\n";
    os << "--\n";
  }

  os << "LogLik: " << fmt("%.2f", report.loglik) << "    AIC: " << fmt("%.2f", report.aic)
     << "    BIC: " << fmt("%.2f", report.bic) << "\n";
  report.text = os.str();
  return report;
}

}  // namespace good

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "good/optimize.hpp"

namespace good {

enum class LinkKind { Identity, Log, Logit };

/// Maps the linear predictor eta to z = h^{-1}(eta).
class LinkFunction {
public:
  constexpr LinkFunction() = default;
  constexpr explicit LinkFunction(LinkKind kind) : kind_(kind) {}

  /// Accepts "identity", "log" or "logit"; throws DomainError otherwise.
  static LinkFunction parse(std::string_view name);

  constexpr LinkKind kind() const { return kind_; }
  std::string_view name() const;

  double inverse(double eta) const;
  /// ln h^{-1}(eta), or NaN when h^{-1}(eta) falls outside (0,1).
  double log_inverse(double eta) const;
  /// dz/deta: 1, z, z(1-z) for identity, log, logit.
  double derivative(double eta) const;
  /// d ln z / d eta.
  double log_derivative(double eta) const;

  friend constexpr bool operator==(LinkFunction, LinkFunction) = default;

private:
  LinkKind kind_ = LinkKind::Log;
};

/// Response counts with an n x p covariate matrix (the intercept is implicit).
struct ModelData {
  std::vector<std::int64_t> response;
  Eigen::MatrixXd covariates;
  std::vector<std::string> covariate_names;
  std::string response_name = "y";

  static ModelData intercept_only(std::vector<std::int64_t> response,
                                  std::string response_name = "y");

  std::size_t n() const { return response.size(); }
  Eigen::Index p() const { return covariates.cols(); }
  /// Throws DataError on empty/negative responses, non-finite or constant
  /// covariate columns, or mismatched shapes.
  void validate() const;
  ModelData without_covariates() const;
};

/// Parameter order everywhere is (s, beta_0, ..., beta_p).
struct FitResult {
  double s_hat = 0.0;
  Eigen::VectorXd beta_hat;
  LinkFunction link;
  double loglik = 0.0;
  Eigen::MatrixXd hessian;
  Eigen::MatrixXd vcov;
  std::vector<double> fitted_means;
  std::int64_t n = 0;
  int n_params = 0;
  /// Set when s was held fixed; hessian and vcov then cover beta only.
  bool s_fixed = false;
  std::vector<std::string> covariate_names;
  std::string response_name = "y";
  int iterations = 0;

  Eigen::VectorXd parameters() const;
  /// Offset of beta_0 inside hessian/vcov (0 when s is fixed, else 1).
  Eigen::Index beta_offset() const { return s_fixed ? 0 : 1; }
};

struct WaldRow {
  std::string name;
  double estimate;
  double std_error;
  double z_value;
  double p_value;
};

struct LrtResult {
  std::string null_label;
  std::string alt_label;
  int df = 0;
  double statistic = 0.0;
  double p_value = 1.0;
  double loglik_null = 0.0;
  double loglik_alt = 0.0;
  int n_params_null = 0;
  int n_params_alt = 0;
};

struct TransformedIntercept {
  double z_hat;
  double se;
};

struct PredictionResult {
  std::vector<double> fit;
  std::vector<double> se_fit;
};

struct SummaryReport {
  std::array<double, 5> residual_quantiles{};  // min, 1Q, median, 3Q, max
  std::vector<WaldRow> coefficients;
  std::optional<TransformedIntercept> transformed;
  std::vector<LrtResult> tests;
  std::vector<std::string> test_failures;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  std::string text;
};

/// Sum over observations of the Good log-pmf at z_i = h^{-1}(beta_0 + x_i' beta).
/// Returns -infinity when any z_i leaves (0,1).
double log_likelihood(const ModelData& data, const Eigen::VectorXd& beta, double s,
                      LinkFunction link);

/// Precomputed likelihood: observations sharing a covariate row are pooled
/// into their sufficient statistics, so each evaluation costs one polylog
/// per distinct row. Summation order is fixed, so results are bit-stable.
class GoodLikelihood {
public:
  GoodLikelihood(const ModelData& data, LinkFunction link);

  double operator()(const Eigen::VectorXd& beta, double s) const;
  /// theta = (s, beta_0, ..., beta_p)
  double operator()(const Eigen::VectorXd& theta) const;

  Eigen::Index n_beta() const { return n_beta_; }

private:
  struct Group {
    Eigen::VectorXd row;  // covariates without the intercept
    double count;
    double sum_shifted;      // sum of (x + 1)
    double sum_log_shifted;  // sum of ln(x + 1)
  };
  std::vector<Group> groups_;
  LinkFunction link_;
  Eigen::Index n_beta_;
};

struct StartValues {
  double s;
  Eigen::VectorXd beta;
};

StartValues default_start(LinkFunction link, Eigen::Index p);

struct FitOptions {
  OptimOptions optim{};
  /// Fitted z closer than this to 0 or 1 counts as a boundary solution.
  double boundary_margin = 1e-10;
};

FitResult fit(const ModelData& data, LinkFunction link,
              const std::optional<StartValues>& start = std::nullopt,
              const FitOptions& options = {});

FitResult fit_fixed_s(const ModelData& data, double s_fixed, LinkFunction link,
                      const FitOptions& options = {});

std::vector<WaldRow> wald_table(const FitResult& fit);

/// z = h^{-1}(beta_0) with a univariate delta-method standard error.
/// Intercept-only fits only.
TransformedIntercept transformed_intercept(const FitResult& fit);

LrtResult lrt(const FitResult& null_fit, const FitResult& alt_fit,
              std::string null_label = "null", std::string alt_label = "alternative");

double aic(const FitResult& fit);
double bic(const FitResult& fit);

/// Good mean F(z, s-1)/F(z, s) - 1 at z = h^{-1}(beta_0 + row' beta_rest).
double fitted_mean(double s, const Eigen::VectorXd& beta, LinkFunction link,
                   const Eigen::VectorXd& covariate_row);

/// Gradient of fitted_mean in (s, beta_0, ..., beta_p).
Eigen::VectorXd mean_gradient(double s, const Eigen::VectorXd& beta, LinkFunction link,
                              const Eigen::VectorXd& covariate_row);

/// Means and delta-method standard errors sqrt(g' V g) for each new row.
PredictionResult predict_with_se(const FitResult& fit, const Eigen::MatrixXd& new_covariates);

/// Type-7 (linear interpolation) sample quantile of already-sorted values.
double sorted_quantile(const std::vector<double>& sorted, double prob);

SummaryReport summary_report(const FitResult& fit, const ModelData& data,
                             const FitOptions& options = {});

}  // namespace good

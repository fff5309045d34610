#include "good/cli/json_io.hpp"

#include <cmath>

#include "good/errors.hpp"

namespace good::cli {

using nlohmann::json;

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != n) throw DataError("fit JSON: matrix is not square");
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
  }
  return m;
}

}  // namespace

json lrt_to_json(const LrtResult& t) {
  return {{"null", t.null_label},          {"alternative", t.alt_label},
          {"df", t.df},                     {"statistic", t.statistic},
          {"p_value", t.p_value},           {"loglik_null", t.loglik_null},
          {"loglik_alt", t.loglik_alt},     {"n_params_null", t.n_params_null},
          {"n_params_alt", t.n_params_alt}};
}

json fit_to_json(const FitResult& fit, const std::vector<LrtResult>& tests) {
  json doc;
  doc["schema"] = kFitSchemaVersion;
  doc["link"] = std::string(fit.link.name());
  doc["s_hat"] = fit.s_hat;
  doc["s_fixed"] = fit.s_fixed;
  doc["beta_hat"] = std::vector<double>(fit.beta_hat.data(), fit.beta_hat.data() + fit.beta_hat.size());

  json names = json::array();
  if (!fit.s_fixed) names.push_back("s");
  names.push_back("(Intercept)");
  for (const auto& n : fit.covariate_names) names.push_back(n);
  doc["names"] = names;

  std::vector<double> se;
  for (Eigen::Index i = 0; i < fit.vcov.rows(); ++i) se.push_back(std::sqrt(fit.vcov(i, i)));
  doc["se"] = se;
  doc["vcov"] = matrix_to_json(fit.vcov);
  doc["hessian"] = matrix_to_json(fit.hessian);
  doc["loglik"] = fit.loglik;
  doc["aic"] = aic(fit);
  doc["bic"] = bic(fit);
  doc["n"] = fit.n;
  doc["n_params"] = fit.n_params;
  doc["response"] = fit.response_name;
  doc["covariates"] = fit.covariate_names;
  json lrts = json::array();
  for (const auto& t : tests) lrts.push_back(lrt_to_json(t));
  doc["lrt"] = lrts;
  doc["fitted"] = fit.fitted_means;
  return doc;
}

FitResult fit_from_json(const json& doc) {
  try {
    if (doc.at("schema").get<int>() != kFitSchemaVersion) {
      throw DataError("fit JSON: unsupported schema version " + doc.at("schema").dump());
    }
    FitResult fit;
    fit.link = LinkFunction::parse(doc.at("link").get<std::string>());
    fit.s_hat = doc.at("s_hat").get<double>();
    fit.s_fixed = doc.value("s_fixed", false);
    const auto beta = doc.at("beta_hat").get<std::vector<double>>();
    if (beta.empty()) throw DataError("fit JSON: beta_hat is empty");
    fit.beta_hat = Eigen::Map<const Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
    fit.vcov = matrix_from_json(doc.at("vcov"));
    if (doc.contains("hessian")) fit.hessian = matrix_from_json(doc.at("hessian"));
    fit.loglik = doc.at("loglik").get<double>();
    fit.n = doc.at("n").get<std::int64_t>();
    fit.n_params = doc.at("n_params").get<int>();
    fit.response_name = doc.value("response", std::string("y"));
    fit.covariate_names = doc.value("covariates", std::vector<std::string>{});
    fit.fitted_means = doc.value("fitted", std::vector<double>{});
    const Eigen::Index expected = fit.beta_hat.size() + fit.beta_offset();
    if (fit.vcov.rows() != expected) throw DataError("fit JSON: vcov dimension does not match beta_hat");
    if (static_cast<Eigen::Index>(fit.covariate_names.size()) != fit.beta_hat.size() - 1) {
      throw DataError("fit JSON: covariate names do not match beta_hat");
    }
    return fit;
  } catch (const json::exception& e) {
    throw DataError(std::string("fit JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw DataError(std::string("fit JSON: ") + e.what());
  }
}

}  // namespace good::cli

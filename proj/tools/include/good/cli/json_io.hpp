#pragma once

#include <optional>

#include <json.hpp>

#include "good/inference.hpp"

namespace good::cli {

inline constexpr int kFitSchemaVersion = 1;

/// Versioned fit document. Keys: schema, link, s_hat, s_fixed, beta_hat,
/// names, se, vcov, hessian, loglik, aic, bic, n, n_params, response,
/// covariates, lrt, fitted. Doubles are written at full round-trip precision.
nlohmann::json fit_to_json(const FitResult& fit, const std::vector<LrtResult>& tests = {});

/// Rebuilds the parts of a FitResult needed for prediction and reporting.
/// Throws DataError on a missing key or unsupported schema.
FitResult fit_from_json(const nlohmann::json& doc);

nlohmann::json lrt_to_json(const LrtResult& t);

}  // namespace good::cli

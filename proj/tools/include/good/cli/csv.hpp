#pragma once

#include <istream>
#include <string>
#include <vector>

#include "good/inference.hpp"

namespace good::cli {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; DataError when absent.
  std::size_t column(const std::string& name) const;
};

/// RFC-4180 style: first record is the header, fields may be double-quoted
/// with "" as an escaped quote, CRLF or LF line endings.
CsvTable parse_csv(std::istream& in, char delimiter = ',');
CsvTable read_csv(const std::string& path, char delimiter = ',');

/// Response must hold nonnegative integers; covariates finite reals, taken in
/// the given order. Parse errors name the 1-based data row.
ModelData load_csv(const std::string& path, const std::string& response,
                   const std::vector<std::string>& covariates, char delimiter = ',');

ModelData model_data_from_table(const CsvTable& table, const std::string& response,
                                const std::vector<std::string>& covariates);

/// Covariate matrix only (for prediction on new data).
Eigen::MatrixXd covariates_from_table(const CsvTable& table,
                                      const std::vector<std::string>& covariates);

}  // namespace good::cli

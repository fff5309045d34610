#include "good/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "good/errors.hpp"

namespace good::cli {

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == name) return j;
  }
  throw DataError("column '" + name + "' not found in CSV header");
}

namespace {

// Reads one record; returns false at end of input.
bool next_record(std::istream& in, char delimiter, std::vector<std::string>& fields,
                 std::size_t& line) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  ++line;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw DataError("unterminated quoted field at line " + std::to_string(line));
  if (any) fields.push_back(std::move(field));
  return any;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool parse_real(const std::string& text, double& value) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), value);
  return ec == std::errc() && ptr == t.data() + t.size();
}

std::string row_label(std::size_t row) { return "row " + std::to_string(row); }

}  // namespace

CsvTable parse_csv(std::istream& in, char delimiter) {
  CsvTable table;
  std::size_t line = 0;
  std::vector<std::string> fields;
  if (!next_record(in, delimiter, fields, line)) throw DataError("CSV input is empty");
  for (auto& f : fields) table.header.push_back(trim(f));
  if (!table.header.empty() && table.header[0].starts_with("\xEF\xBB\xBF")) {
    table.header[0].erase(0, 3);
  }
  while (next_record(in, delimiter, fields, line)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;  // blank line
    if (fields.size() != table.header.size()) {
      throw DataError(row_label(table.rows.size() + 1) + ": expected " +
                      std::to_string(table.header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    table.rows.push_back(fields);
  }
  return table;
}

CsvTable read_csv(const std::string& path, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open CSV file '" + path + "'");
  return parse_csv(in, delimiter);
}

Eigen::MatrixXd covariates_from_table(const CsvTable& table,
                                      const std::vector<std::string>& covariates) {
  std::vector<std::size_t> cols;
  for (const auto& name : covariates) cols.push_back(table.column(name));
  Eigen::MatrixXd x(static_cast<Eigen::Index>(table.rows.size()),
                    static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const std::string& text = table.rows[i][cols[j]];
      double v = 0.0;
      if (!parse_real(text, v)) {
        throw DataError(row_label(i + 1) + ": covariate '" + covariates[j] + "' value '" + text +
                        "' is not a number");
      }
      if (!std::isfinite(v)) {
        throw DataError(row_label(i + 1) + ": covariate '" + covariates[j] +
                        "' is non-finite ('" + trim(text) + "')");
      }
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return x;
}

ModelData model_data_from_table(const CsvTable& table, const std::string& response,
                                const std::vector<std::string>& covariates) {
  if (table.rows.empty()) throw DataError("CSV has a header but no data rows");
  const std::size_t ycol = table.column(response);
  ModelData data;
  data.response_name = response;
  data.covariate_names = covariates;
  data.response.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const std::string& text = table.rows[i][ycol];
    double v = 0.0;
    if (!parse_real(text, v) || !std::isfinite(v)) {
      throw DataError(row_label(i + 1) + ": response '" + response + "' value '" + text +
                      "' is not a number");
    }
    if (v < 0.0) {
      throw DataError(row_label(i + 1) + ": response '" + response + "' value '" + trim(text) +
                      "' is negative");
    }
    if (v != std::floor(v) || v > 9.0e15) {
      throw DataError(row_label(i + 1) + ": response '" + response + "' value '" + trim(text) +
                      "' is not an integer");
    }
    data.response.push_back(static_cast<std::int64_t>(v));
  }
  data.covariates = covariates_from_table(table, covariates);
  return data;
}

ModelData load_csv(const std::string& path, const std::string& response,
                   const std::vector<std::string>& covariates, char delimiter) {
  return model_data_from_table(read_csv(path, delimiter), response, covariates);
}

}  // namespace good::cli

#include "good/cli/app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "good/cli/csv.hpp"
#include "good/cli/datasets.hpp"
#include "good/cli/json_io.hpp"
#include "good/distribution.hpp"
#include "good/errors.hpp"
#include "good/inference.hpp"

namespace good::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

struct GlobalOptions {
  bool json = false;
  std::optional<std::uint64_t> seed;
};

struct ParamOptions {
  std::optional<double> z;
  std::optional<double> log_z;
  double s = 0.0;

  void attach(CLI::App* sub) {
    auto* zo = sub->add_option("--z", z, "Scale parameter z in (0,1)");
    auto* lzo = sub->add_option("--log-z", log_z, "Natural log of z (< 0), alternative to --z");
    zo->excludes(lzo);
    sub->add_option("--s", s, "Shape parameter s")->required();
  }

  GoodParams params() const {
    if (z) return GoodParams::from_z(*z, s);
    if (log_z) return GoodParams::from_log_z(*log_z, s);
    throw UsageError("one of --z or --log-z is required");
  }
};

struct ModelOptions {
  std::string dataset;
  std::string csv;
  std::string response;
  std::vector<std::string> covariates;
  std::string link = "log";
  std::vector<double> start;
  std::string delimiter = ",";

  void attach(CLI::App* sub) {
    auto* d = sub->add_option("--dataset", dataset, "Embedded dataset name");
    auto* c = sub->add_option("--csv", csv, "CSV file with a header row");
    d->excludes(c);
    sub->add_option("--response", response, "Response column (with --csv)");
    sub->add_option("--covariates", covariates, "Covariate columns (with --csv)")->delimiter(',');
    sub->add_option("--link", link, "identity | log | logit")
        ->check(CLI::IsMember({"identity", "log", "logit"}));
    sub->add_option("--start", start, "Start values s,b0[,b1...]")->delimiter(',');
    sub->add_option("--delimiter", delimiter, "CSV field delimiter");
  }

  bool has_data() const { return !dataset.empty() || !csv.empty(); }

  char delimiter_char() const {
    if (delimiter == "\\t" || delimiter == "tab") return '\t';
    if (delimiter.size() != 1) throw UsageError("--delimiter must be a single character");
    return delimiter[0];
  }

  ModelData data() const {
    if (!dataset.empty()) {
      if (!covariates.empty() || !response.empty()) {
        throw UsageError("--response/--covariates apply only to --csv input");
      }
      return ModelData::intercept_only(cli::dataset(dataset), dataset);
    }
    if (!csv.empty()) {
      if (response.empty()) throw UsageError("--csv requires --response");
      return load_csv(csv, response, covariates, delimiter_char());
    }
    throw UsageError("one of --dataset or --csv is required");
  }

  std::optional<StartValues> start_values(Eigen::Index p) const {
    if (start.empty()) return std::nullopt;
    if (static_cast<Eigen::Index>(start.size()) != p + 2) {
      throw UsageError("--start needs " + std::to_string(p + 2) + " values (s, b0..bp)");
    }
    StartValues sv{start[0], Eigen::VectorXd(p + 1)};
    for (Eigen::Index j = 0; j <= p; ++j) sv.beta[j] = start[static_cast<std::size_t>(j + 1)];
    return sv;
  }
};

// "from:to:step" -> inclusive grid
std::vector<double> parse_grid(const std::string& text, const char* flag) {
  double from = 0, to = 0, step = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &from, &to, &step, &tail) != 3 || !(step > 0.0) ||
      to < from) {
    throw UsageError(std::string(flag) + " expects from:to:step with step > 0 and from <= to");
  }
  const auto count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
  if (count > 100000) throw UsageError(std::string(flag) + " grid is too large");
  std::vector<double> grid;
  for (long k = 0; k < count; ++k) grid.push_back(from + static_cast<double>(k) * step);
  return grid;
}

std::vector<std::int64_t> read_integers(std::istream& in, const std::string& source) {
  std::vector<std::int64_t> values;
  std::string token;
  std::size_t index = 0;
  while (in >> token) {
    ++index;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw DataError(source + ": value " + std::to_string(index) + " ('" + token +
                      "') is not an integer");
    }
    values.push_back(v);
  }
  if (values.empty()) throw DataError(source + ": no values");
  return values;
}

json summary_fields(const SummaryReport& report) {
  json j;
  j["residual_quantiles"] = report.residual_quantiles;
  if (report.transformed) {
    j["transformed_intercept"] = {{"z", report.transformed->z_hat}, {"se", report.transformed->se}};
  }
  json coefs = json::array();
  for (const auto& row : report.coefficients) {
    coefs.push_back({{"name", row.name},
                     {"estimate", row.estimate},
                     {"std_error", row.std_error},
                     {"z_value", row.z_value},
                     {"p_value", row.p_value}});
  }
  j["coefficients"] = coefs;
  return j;
}

class Commands {
public:
  Commands(std::ostream& out, std::istream& in) : out_(out), in_(in) {}

  void pmf(const ParamOptions& po, const std::vector<std::int64_t>& xs, bool log_scale) {
    const GoodParams params = po.params();
    std::vector<double> values;
    for (auto x : xs) values.push_back(log_scale ? log_pmf(x, params) : good::pmf(x, params));
    emit_columns("x", xs, log_scale ? "log_pmf" : "pmf", values);
  }

  void cdf(const ParamOptions& po, const std::vector<std::int64_t>& qs, bool upper) {
    const GoodParams params = po.params();
    std::vector<double> values;
    for (auto q : qs) values.push_back(good::cdf(q, params, !upper));
    emit_columns("q", qs, upper ? "upper" : "cdf", values);
  }

  void quantile(const ParamOptions& po, const std::vector<double>& ps, bool upper) {
    const GoodParams params = po.params();
    std::vector<std::int64_t> values;
    for (double p : ps) values.push_back(good::quantile(p, params, !upper));
    if (global.json) {
      out_ << json{{"p", ps}, {"quantile", values}}.dump() << "\n";
      return;
    }
    out_ << "p\tquantile\n";
    for (std::size_t i = 0; i < ps.size(); ++i) out_ << g6(ps[i]) << "\t" << values[i] << "\n";
  }

  void sample(const ParamOptions& po, std::size_t n, double th) {
    if (!global.seed) throw UsageError("sample requires --seed");
    const auto draws = good::sample(n, po.params(), *global.seed, th);
    if (global.json) {
      out_ << json{{"seed", *global.seed}, {"generator", "mt19937_64"}, {"values", draws}}.dump()
           << "\n";
      return;
    }
    for (auto v : draws) out_ << v << "\n";
  }

  void moments_of_params(const ParamOptions& po, int max_order) {
    const GoodParams params = po.params();
    json j{{"mean", mean(params)},
           {"variance", variance(params)},
           {"dispersion_index", dispersion_index(params)}};
    std::vector<double> raw;
    for (int k = 1; k <= max_order; ++k) raw.push_back(raw_moment(k, params));
    j["raw_moments"] = raw;
    if (global.json) {
      out_ << j.dump() << "\n";
      return;
    }
    out_ << "mean\t" << g6(j["mean"].get<double>()) << "\n";
    out_ << "variance\t" << g6(j["variance"].get<double>()) << "\n";
    out_ << "dispersion_index\t" << g6(j["dispersion_index"].get<double>()) << "\n";
    for (int k = 1; k <= max_order; ++k) out_ << "E[X^" << k << "]\t" << g6(raw[static_cast<std::size_t>(k - 1)]) << "\n";
  }

  void moments_of_data(const std::string& source) {
    std::vector<std::int64_t> values;
    if (source == "-") {
      values = read_integers(in_, "stdin");
    } else {
      std::ifstream file(source);
      if (!file) throw DataError("cannot open '" + source + "'");
      values = read_integers(file, source);
    }
    const double n = static_cast<double>(values.size());
    double m = 0.0;
    for (auto v : values) m += static_cast<double>(v);
    m /= n;
    double ss = 0.0;
    for (auto v : values) ss += (static_cast<double>(v) - m) * (static_cast<double>(v) - m);
    const double var = values.size() > 1 ? ss / (n - 1.0) : 0.0;
    if (global.json) {
      out_ << json{{"n", values.size()}, {"mean", m}, {"variance", var}, {"dispersion_index", var / m}}.dump()
           << "\n";
      return;
    }
    out_ << "n\t" << values.size() << "\n";
    out_ << "mean\t" << g6(m) << "\n";
    out_ << "variance\t" << g6(var) << "\n";
    out_ << "dispersion_index\t" << g6(var / m) << "\n";
  }

  void dispersion_grid(const std::string& zgrid, const std::string& sgrid) {
    const auto zs = parse_grid(zgrid, "--z-grid");
    const auto ss = parse_grid(sgrid, "--s-grid");
    json rows = json::array();
    std::ostringstream text;
    text << "z\ts\tmean\tvariance\tdispersion_index\n";
    for (double z : zs) {
      for (double s : ss) {
        const GoodParams params = GoodParams::from_z(z, s);
        const double mu = mean(params);
        const double var = variance(params);
        rows.push_back({{"z", z}, {"s", s}, {"mean", mu}, {"variance", var}, {"dispersion_index", var / mu}});
        text << g6(z) << "\t" << g6(s) << "\t" << g6(mu) << "\t" << g6(var) << "\t" << g6(var / mu) << "\n";
      }
    }
    if (global.json) {
      out_ << rows.dump() << "\n";
    } else {
      out_ << text.str();
    }
  }

  void fit(const ModelOptions& mo) {
    const ModelData data = mo.data();
    const LinkFunction link = LinkFunction::parse(mo.link);
    const FitResult result = good::fit(data, link, mo.start_values(data.p()));
    const SummaryReport report = summary_report(result, data);
    if (global.json) {
      json doc = fit_to_json(result, report.tests);
      doc["summary"] = summary_fields(report);
      out_ << doc.dump(2) << "\n";
      return;
    }
    out_ << report.text;
  }

  void predict(const ModelOptions& mo, const std::string& model_path, const std::string& newdata) {
    FitResult result;
    std::optional<ModelData> data;
    if (!model_path.empty()) {
      std::ifstream file(model_path);
      if (!file) throw DataError("cannot open model file '" + model_path + "'");
      json doc;
      try {
        doc = json::parse(file);
      } catch (const json::exception& e) {
        throw DataError(std::string("model file is not valid JSON: ") + e.what());
      }
      result = fit_from_json(doc);
      if (mo.has_data()) {
        if (!mo.dataset.empty()) {
          data = ModelData::intercept_only(cli::dataset(mo.dataset), mo.dataset);
        } else {
          const CsvTable table = read_csv(mo.csv, mo.delimiter_char());
          data = ModelData{};
          data->covariates = covariates_from_table(table, result.covariate_names);
        }
      }
    } else {
      data = mo.data();
      result = good::fit(*data, LinkFunction::parse(mo.link), mo.start_values(data->p()));
    }

    Eigen::MatrixXd rows;
    if (!newdata.empty()) {
      rows = covariates_from_table(read_csv(newdata, mo.delimiter_char()), result.covariate_names);
    } else if (data) {
      rows = data->covariates;
    } else if (result.beta_hat.size() == 1) {
      rows = Eigen::MatrixXd(1, 0);
    } else {
      throw UsageError("predict with --model needs --newdata or --csv for covariate values");
    }

    const PredictionResult pred = predict_with_se(result, rows);
    if (global.json) {
      out_ << json{{"fit", pred.fit}, {"se_fit", pred.se_fit}}.dump() << "\n";
      return;
    }
    out_ << "fit\tse.fit\n";
    for (std::size_t i = 0; i < pred.fit.size(); ++i) {
      out_ << g6(pred.fit[i]) << "\t" << g6(pred.se_fit[i]) << "\n";
    }
  }

  void datasets() {
    json list = json::array();
    std::ostringstream text;
    for (const auto& e : dataset_registry()) {
      list.push_back({{"name", e.name}, {"n", e.observations.size()}, {"description", e.description},
                      {"source", e.source}});
      text << e.name << "\t" << e.observations.size() << "\t" << e.description << "\n";
    }
    if (global.json) {
      out_ << list.dump() << "\n";
    } else {
      out_ << text.str();
    }
  }

  GlobalOptions global;

private:
  template <class X>
  void emit_columns(const char* xname, const std::vector<X>& xs, const char* yname,
                    const std::vector<double>& ys) {
    if (global.json) {
      out_ << json{{xname, xs}, {yname, ys}}.dump() << "\n";
      return;
    }
    out_ << xname << "\t" << yname << "\n";
    for (std::size_t i = 0; i < xs.size(); ++i) out_ << xs[i] << "\t" << g6(ys[i]) << "\n";
  }

  std::ostream& out_;
  std::istream& in_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  Commands commands(buffer, std::cin);

  CLI::App app{"Good distribution: probabilities, sampling and Good regression"};
  app.name("good");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", commands.global.json, "Machine-readable JSON output (full precision)");
  app.add_option("--seed", commands.global.seed, "Seed for the mt19937_64 generator");

  ParamOptions params;
  std::vector<std::int64_t> xs;
  std::vector<double> ps;
  bool upper = false;
  bool log_scale = false;
  std::size_t n_draws = 0;
  double th = kDefaultSampleThreshold;
  int max_order = 4;
  std::string data_source;
  std::string z_grid = "0.05:0.95:0.05";
  std::string s_grid = "-10:10:1";
  ModelOptions model;
  std::string model_path;
  std::string newdata;

  auto* pmf_cmd = app.add_subcommand("pmf", "Probability mass at each --x");
  params.attach(pmf_cmd);
  pmf_cmd->add_option("--x", xs, "Support points")->delimiter(',')->required();
  pmf_cmd->add_flag("--log", log_scale, "Report log-probabilities");

  auto* cdf_cmd = app.add_subcommand("cdf", "P(X <= q) at each --q");
  params.attach(cdf_cmd);
  cdf_cmd->add_option("--q", xs, "Quantiles")->delimiter(',')->required();
  cdf_cmd->add_flag("--upper-tail", upper, "Report P(X > q)");

  auto* q_cmd = app.add_subcommand("quantile", "Smallest x with P(X <= x) >= p");
  params.attach(q_cmd);
  q_cmd->add_option("--p", ps, "Probabilities")->delimiter(',')->required();
  q_cmd->add_flag("--upper-tail", upper, "Interpret p as an upper-tail probability");

  auto* sample_cmd = app.add_subcommand("sample", "Random draws by inverse-cdf sampling (needs --seed)");
  params.attach(sample_cmd);
  sample_cmd->add_option("--n", n_draws, "Number of draws")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--th", th, "Tail probability trimmed at each end of the support");

  auto* mom_cmd = app.add_subcommand("moments", "Model moments for (z,s), or sample moments of --data");
  auto* mz = mom_cmd->add_option("--z", params.z, "Scale parameter z in (0,1)");
  auto* mlz = mom_cmd->add_option("--log-z", params.log_z, "Natural log of z");
  mz->excludes(mlz);
  auto* ms = mom_cmd->add_option("--s", params.s, "Shape parameter s");
  mom_cmd->add_option("--k", max_order, "Highest raw moment order")->check(CLI::Range(1, 12));
  auto* md = mom_cmd->add_option("--data", data_source, "Whitespace-separated counts, '-' for stdin");
  md->excludes(mz)->excludes(mlz)->excludes(ms);

  auto* grid_cmd = app.add_subcommand("dispersion-grid", "Dispersion index over a (z,s) grid");
  grid_cmd->add_option("--z-grid", z_grid, "from:to:step for z");
  grid_cmd->add_option("--s-grid", s_grid, "from:to:step for s");

  auto* fit_cmd = app.add_subcommand("fit", "Maximum-likelihood Good regression");
  model.attach(fit_cmd);

  auto* pred_cmd = app.add_subcommand("predict", "Fitted means with delta-method standard errors");
  model.attach(pred_cmd);
  pred_cmd->add_option("--model", model_path, "Fit JSON written by `good --json fit`");
  pred_cmd->add_option("--newdata", newdata, "CSV with covariate columns to predict at");

  auto* ds_cmd = app.add_subcommand("datasets", "List embedded datasets");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << one_line(e.what()) << "\n";
    return kExitUsage;
  }

  try {
    if (pmf_cmd->parsed()) {
      commands.pmf(params, xs, log_scale);
    } else if (cdf_cmd->parsed()) {
      commands.cdf(params, xs, upper);
    } else if (q_cmd->parsed()) {
      commands.quantile(params, ps, upper);
    } else if (sample_cmd->parsed()) {
      commands.sample(params, n_draws, th);
    } else if (mom_cmd->parsed()) {
      if (!data_source.empty()) {
        commands.moments_of_data(data_source);
      } else {
        if (ms->count() == 0) throw UsageError("moments needs --s with --z/--log-z, or --data");
        commands.moments_of_params(params, max_order);
      }
    } else if (grid_cmd->parsed()) {
      commands.dispersion_grid(z_grid, s_grid);
    } else if (fit_cmd->parsed()) {
      commands.fit(model);
    } else if (pred_cmd->parsed()) {
      commands.predict(model, model_path, newdata);
    } else if (ds_cmd->parsed()) {
      commands.datasets();
    }
  } catch (const UsageError& e) {
    err << "error: usage: " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: usage: " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: data: " << one_line(e.what()) << "\n";
    return kExitData;
  } catch (const DimensionError& e) {
    err << "error: data: " << one_line(e.what()) << "\n";
    return kExitData;
  } catch (const NumericalError& e) {
    err << "error: numerical: " << one_line(e.what()) << "\n";
    return kExitNumerical;
  }

  out << buffer.str();
  return kExitOk;
}

}  // namespace good::cli

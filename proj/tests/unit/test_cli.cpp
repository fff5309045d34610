#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "good/cli/app.hpp"
#include "good/cli/csv.hpp"
#include "good/cli/datasets.hpp"
#include "good/cli/json_io.hpp"
#include "good/errors.hpp"
#include "good/inference.hpp"

using namespace good;
using namespace good::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
public:
  explicit TempFile(const std::string& contents, const std::string& suffix = ".csv") {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("good_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix);
    std::ofstream(path_) << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  std::string path() const { return path_.string(); }

private:
  std::filesystem::path path_;
};

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("embedded datasets reproduce the published frequency tables") {
  CHECK(dataset("discoveries").size() == 100);
  CHECK(frequency_table(dataset("discoveries")) ==
        std::map<std::int64_t, std::int64_t>{{0, 9}, {1, 12}, {2, 26}, {3, 20}, {4, 12}, {5, 7},
                                             {6, 6}, {7, 4}, {8, 1}, {9, 1}, {10, 1}, {12, 1}});
  CHECK(frequency_table(dataset("strikes")) ==
        std::map<std::int64_t, std::int64_t>{{0, 46}, {1, 76}, {2, 24}, {3, 9}, {4, 1}});
  CHECK(frequency_table(dataset("polarbears")) == std::map<std::int64_t, std::int64_t>{{1, 76}, {2, 147}, {3, 8}});
  const auto sum = [](const std::vector<std::int64_t>& v) { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); };
  CHECK(sum(dataset("discoveries")) == 310);
  CHECK(sum(dataset("strikes")) == 155);
  CHECK(sum(dataset("polarbears")) == 394);
  CHECK(dataset_registry().size() == 3);
}

TEST_CASE("unknown dataset lists the available names") {
  try {
    dataset("piglets");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("discoveries") != std::string::npos);
    CHECK(msg.find("strikes") != std::string::npos);
    CHECK(msg.find("polarbears") != std::string::npos);
    CHECK(msg.find("not bundled") != std::string::npos);
  }
}

TEST_CASE("CSV parsing") {
  std::istringstream in("\xEF\xBB\xBFy,\"dose, mg\",note\r\n1,2.5,\"a \"\"quoted\"\" word\"\r\n\r\n2,3,plain\r\n");
  const auto t = parse_csv(in);
  REQUIRE(t.header.size() == 3);
  CHECK(t.header[0] == "y");
  CHECK(t.header[1] == "dose, mg");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][2] == "a \"quoted\" word");
  CHECK(t.column("note") == 2);
  CHECK_THROWS_AS(t.column("missing"), DataError);

  std::istringstream semi("y;x\n1;2\n");
  CHECK(parse_csv(semi, ';').rows[0][1] == "2");
  std::istringstream ragged("y,x\n1\n");
  CHECK_THROWS_AS(parse_csv(ragged), DataError);
}

TEST_CASE("load_csv examples") {
  TempFile ok("y,x\n1,0.5\n0,1.5\n3,2\n");
  const auto data = load_csv(ok.path(), "y", {"x"});
  CHECK(data.n() == 3);
  CHECK(data.p() == 1);
  CHECK(data.covariates(2, 0) == 2.0);
  CHECK(data.response_name == "y");

  TempFile negative("y,x\n1,1\n2,2\n3,3\n4,4\n5,5\n6,6\n-1,7\n");
  try {
    load_csv(negative.path(), "y", {"x"});
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("row 7") != std::string::npos);
  }

  TempFile fractional("y,x\n1.5,1\n2,2\n");
  CHECK_THROWS_WITH_AS(load_csv(fractional.path(), "y", {"x"}), doctest::Contains("row 1"), DataError);

  TempFile nan_cov("y,x\n1,NaN\n2,2\n");
  CHECK_THROWS_WITH_AS(load_csv(nan_cov.path(), "y", {"x"}), doctest::Contains("non-finite"), DataError);

  CHECK_THROWS_AS(load_csv(ok.path(), "y", {"nope"}), DataError);
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", "y", {}), DataError);
}

TEST_CASE("pmf, cdf and quantile subcommands") {
  const auto r = invoke({"pmf", "--z", "0.5", "--s", "0", "--x", "0,1,2"});
  CHECK(r.code == 0);
  CHECK(r.out == "x\tpmf\n0\t0.5\n1\t0.25\n2\t0.125\n");
  CHECK(r.err.empty());

  const auto j = invoke({"--json", "pmf", "--log-z", "-0.6931471805599453", "--s", "0", "--x", "3"});
  REQUIRE(j.code == 0);
  CHECK(json::parse(j.out)["pmf"][0].get<double>() == doctest::Approx(0.0625).epsilon(1e-14));

  const auto c = invoke({"cdf", "--z", "0.5", "--s", "0", "--q", "-1,0", "--upper-tail"});
  CHECK(c.out == "q\tupper\n-1\t1\n0\t0.5\n");

  const auto q = invoke({"quantile", "--z", "0.4362", "--s", "-2.4022", "--p", "0,0.99"});
  CHECK(q.out == "p\tquantile\n0\t0\n0.99\t10\n");
}

TEST_CASE("exit codes and single-line errors") {
  const auto usage = invoke({"pmf", "--z", "0.5"});
  CHECK(usage.code == kExitUsage);
  CHECK(usage.out.empty());
  CHECK(count_lines(usage.err) == 1);
  CHECK(usage.err.rfind("error: usage:", 0) == 0);

  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"bogus"}).code == kExitUsage);
  CHECK(invoke({"pmf", "--z", "1.5", "--s", "0", "--x", "1"}).code == kExitUsage);
  CHECK(invoke({"sample", "--z", "0.5", "--s", "0", "--n", "3"}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitOk);

  const auto data = invoke({"fit", "--dataset", "piglets"});
  CHECK(data.code == kExitData);
  CHECK(data.out.empty());
  CHECK(data.err.rfind("error: data:", 0) == 0);
  CHECK(count_lines(data.err) == 1);

  TempFile zeros("y\n0\n0\n0\n0\n");
  const auto num = invoke({"fit", "--csv", zeros.path(), "--response", "y"});
  CHECK(num.code == kExitNumerical);
  CHECK(num.out.empty());
  CHECK(num.err.rfind("error: numerical:", 0) == 0);
  CHECK(count_lines(num.err) == 1);

  TempFile bad("y,x\n1,1\n-1,2\n");
  const auto neg = invoke({"fit", "--csv", bad.path(), "--response", "y", "--covariates", "x"});
  CHECK(neg.code == kExitData);
  CHECK(neg.err.find("row 2") != std::string::npos);
}

TEST_CASE("fit subcommand prints the summary") {
  const auto r = invoke({"fit", "--dataset", "discoveries", "--link", "log"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("LogLik: -210.73") != std::string::npos);
  CHECK(r.out.find("AIC: 425.45") != std::string::npos);
  CHECK(r.out.find("BIC: 430.66") != std::string::npos);
}

TEST_CASE("fit JSON round-trips into predict bit-identically") {
  const auto r = invoke({"--json", "fit", "--dataset", "discoveries"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["schema"] == kFitSchemaVersion);
  CHECK(doc["link"] == "log");
  CHECK(doc["lrt"].size() == 2);
  TempFile model(r.out, ".json");

  const auto p = invoke({"--json", "predict", "--model", model.path(), "--dataset", "discoveries"});
  REQUIRE(p.code == 0);
  const json pred = json::parse(p.out);
  const auto fitted = doc["fitted"].get<std::vector<double>>();
  const auto again = pred["fit"].get<std::vector<double>>();
  REQUIRE(fitted.size() == again.size());
  for (std::size_t i = 0; i < fitted.size(); ++i) CHECK(std::bit_cast<std::uint64_t>(fitted[i]) == std::bit_cast<std::uint64_t>(again[i]));

  const FitResult back = fit_from_json(doc);
  CHECK(back.s_hat == doc["s_hat"].get<double>());
  CHECK(back.vcov.rows() == 2);
}

TEST_CASE("predict with covariates and new data") {
  TempFile train("y,x\n0,0\n1,0\n2,0\n1,1\n2,1\n3,1\n2,2\n4,2\n3,2\n5,2\n0,0\n1,1\n");
  TempFile fresh("x\n0\n1.5\n");
  const auto r = invoke({"predict", "--csv", train.path(), "--response", "y", "--covariates", "x", "--newdata",
                         fresh.path()});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("fit\tse.fit\n", 0) == 0);
  CHECK(count_lines(r.out) == 3);
}

TEST_CASE("sample piped into moments") {
  const auto draws = invoke({"sample", "--z", "0.4362", "--s", "-2.4022", "--n", "100000", "--seed", "7"});
  REQUIRE(draws.code == 0);
  TempFile values(draws.out, ".txt");
  const auto m = invoke({"--json", "moments", "--data", values.path()});
  REQUIRE(m.code == 0);
  const json doc = json::parse(m.out);
  CHECK(doc["n"] == 100000);
  CHECK(std::abs(doc["mean"].get<double>() - 3.10) < 0.07);
  CHECK(invoke({"sample", "--z", "0.4362", "--s", "-2.4022", "--n", "50", "--seed", "7"}).out ==
        invoke({"--seed", "7", "sample", "--z", "0.4362", "--s", "-2.4022", "--n", "50"}).out);
}

TEST_CASE("moments and dispersion-grid") {
  const auto m = invoke({"moments", "--z", "0.5", "--s", "0", "--k", "2"});
  REQUIRE(m.code == 0);
  CHECK(m.out.find("mean\t1\n") != std::string::npos);
  CHECK(m.out.find("dispersion_index\t2\n") != std::string::npos);
  CHECK(m.out.find("E[X^2]\t3\n") != std::string::npos);

  const auto g = invoke({"--json", "dispersion-grid", "--z-grid", "0.1:0.5:0.2", "--s-grid", "0:1:1"});
  REQUIRE(g.code == 0);
  const json rows = json::parse(g.out);
  CHECK(rows.size() == 6);
  CHECK(rows[0]["dispersion_index"].get<double>() == doctest::Approx(1.0 / 0.9).epsilon(1e-12));
  CHECK(invoke({"dispersion-grid", "--z-grid", "0.5:0.1:0.1"}).code == kExitUsage);
}

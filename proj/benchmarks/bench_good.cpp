#include <cmath>

#include <benchmark/benchmark.h>

#include "good/distribution.hpp"
#include "good/inference.hpp"
#include "good/specfun.hpp"
#ifdef GOOD_BENCH_DATASETS
#include "good/cli/datasets.hpp"
#endif

namespace {

// range(0) = -s, so the peak term index grows with it
void BM_LogPolylogSeries(benchmark::State& state) {
  const double s = -static_cast<double>(state.range(0));
  const double lz = std::log(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(good::log_polylog(lz, s));
}
BENCHMARK(BM_LogPolylogSeries)->Arg(0)->Arg(5)->Arg(30)->Arg(110);

void BM_LogPolylogNearOne(benchmark::State& state) {
  const double lz = std::log1p(-std::pow(10.0, -static_cast<double>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(good::log_polylog(lz, 1.5));
}
BENCHMARK(BM_LogPolylogNearOne)->DenseRange(1, 4);

void BM_LogPolylogWood(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(good::log_polylog(std::log(0.1), -150.0));
}
BENCHMARK(BM_LogPolylogWood);

void BM_Sample(benchmark::State& state) {
  const auto params = good::GoodParams::from_z(0.4362, -2.4022);
  for (auto _ : state) {
    benchmark::DoNotOptimize(good::sample(static_cast<std::size_t>(state.range(0)), params, 7));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(100000);

good::ModelData synthetic(std::size_t n, std::size_t levels) {
  good::ModelData data;
  data.covariates.resize(static_cast<Eigen::Index>(n), 1);
  data.covariate_names = {"x"};
  const auto draws = good::sample(n, good::GoodParams::from_z(0.3, -3.0), 11);
  for (std::size_t i = 0; i < n; ++i) {
    data.covariates(static_cast<Eigen::Index>(i), 0) = static_cast<double>(i % levels);
    data.response.push_back(draws[i]);
  }
  return data;
}

void BM_Likelihood(benchmark::State& state) {
  const auto data = synthetic(10000, static_cast<std::size_t>(state.range(0)));
  const good::GoodLikelihood lik(data, good::LinkFunction(good::LinkKind::Logit));
  Eigen::VectorXd theta(3);
  theta << -3.0, -0.8, 0.5 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lik(theta));
}
BENCHMARK(BM_Likelihood)->Arg(2)->Arg(50)->Arg(1000);

#ifdef GOOD_BENCH_DATASETS
void BM_FitDiscoveries(benchmark::State& state) {
  const auto data = good::ModelData::intercept_only(good::cli::dataset("discoveries"));
  for (auto _ : state) benchmark::DoNotOptimize(good::fit(data, good::LinkFunction(good::LinkKind::Log)));
}
BENCHMARK(BM_FitDiscoveries)->Unit(benchmark::kMillisecond);
#endif

void BM_FitRegression(benchmark::State& state) {
  const auto data = synthetic(2000, 5);
  for (auto _ : state) benchmark::DoNotOptimize(good::fit(data, good::LinkFunction(good::LinkKind::Logit)));
}
BENCHMARK(BM_FitRegression)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

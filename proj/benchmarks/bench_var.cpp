#include <random>

#include <benchmark/benchmark.h>

#include "macrovar/dataset.hpp"
#include "macrovar/linalg.hpp"
#include "macrovar/var.hpp"

namespace {

using namespace macrovar;

Sample random_var_sample(Eigen::Index T, Eigen::Index m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd data(T, m);
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(m);
  for (Eigen::Index t = 0; t < T; ++t) {
    for (Eigen::Index i = 0; i < m; ++i) data(t, i) = 0.5 * prev(i) + z(gen);
    prev = data.row(t).transpose();
  }
  return Sample::indexed(data);
}

VarSpec spec_for(Eigen::Index m, int p) {
  VarSpec spec;
  for (Eigen::Index i = 0; i < m; ++i) spec.variables.push_back("y" + std::to_string(i));
  spec.lags = p;
  return spec;
}

void BM_EstimateVar(benchmark::State& state) {
  const auto m = state.range(0);
  const auto T = state.range(1);
  const auto sample = random_var_sample(T, m, 1);
  const auto spec = spec_for(m, 2);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_var(sample, spec));
}
BENCHMARK(BM_EstimateVar)->Args({2, 23})->Args({4, 200})->Args({8, 1000})->Args({2, 10000});

void BM_OrthogonalIrf(benchmark::State& state) {
  const auto m = state.range(0);
  const auto est = estimate_var(random_var_sample(500, m, 2), spec_for(m, 2));
  for (auto _ : state) benchmark::DoNotOptimize(orthogonal_irf(est, 20));
}
BENCHMARK(BM_OrthogonalIrf)->Arg(2)->Arg(4)->Arg(8);

void BM_BootstrapBrazil(benchmark::State& state) {
  const auto data = load_dataset(MACROVAR_DATA_DIR "/macro_panel.csv");
  const auto panel = apply_transform(data.country("Brazil"), "gdp", TransformKind::Log);
  const std::vector<std::string> vars{"gdp", "interest_rate"};
  const auto sample = complete_cases(panel, vars);
  const VarSpec spec{vars, 1, true};
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_bands(sample, spec, 10, {1000, 0.95, 42, threads}));
}
BENCHMARK(BM_BootstrapBrazil)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_SpectralRadius(benchmark::State& state) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> z(0.0, 0.1);
  const auto n = state.range(0);
  Eigen::MatrixXd F(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) F(i, j) = z(gen);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(F));
}
BENCHMARK(BM_SpectralRadius)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();

// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "egpc/dataset.hpp"
#include "egpc/estimation.hpp"

namespace
{

using namespace egpc;

void BM_BuildDataset(benchmark::State& state, const char* name)
{
  const auto spec = class_spec(name);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_dataset(spec, state.range(0), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_BuildDataset, rectangle, "rectangle")->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BuildDataset, tube, "tube")->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_FitPca(benchmark::State& state, const char* name)
{
  const auto ds = build_dataset(class_spec(name), state.range(0), 1);
  const DataMatrix X = ds.data_matrix();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_pca(X));
  }
}
BENCHMARK_CAPTURE(BM_FitPca, rectangle, "rectangle")->Arg(200)->Arg(1800)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FitPca, fan_blade, "fan_blade")->Arg(200)->Arg(1800)->Unit(benchmark::kMillisecond);

void BM_ParameterMap(benchmark::State& state)
{
  const auto ds = build_dataset(class_spec("helix"), 1800, 1);
  const DataMatrix X = ds.data_matrix();
  const ParameterMatrix P = ds.parameter_matrix();
  const auto model = fit_pca(X);
  const Index r = std::min<Index>(state.range(0), model.rank());
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_parameter_map(model, X, P, r));
  }
}
BENCHMARK(BM_ParameterMap)->Arg(3)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Estimate(benchmark::State& state)
{
  const auto ds = build_dataset(class_spec("helix"), 1800, 1);
  const DataMatrix X = ds.data_matrix();
  const auto model = fit_pca(X);
  const auto map = fit_parameter_map(model, X, ds.parameter_matrix(), std::min<Index>(12, model.rank()));
  const DesignVector x = X.col(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate(map, model, x));
  }
}
BENCHMARK(BM_Estimate);

void BM_VerifyEquivalence(benchmark::State& state)
{
  const auto ds = build_dataset(class_spec("rectangle"), state.range(0), 1);
  const DataMatrix X = ds.data_matrix();
  const ParameterMatrix P = ds.parameter_matrix();
  const auto config = random_mass_weight_config(200, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_equivalence(X, P, config, 100, 1e-10, 1));
  }
}
BENCHMARK(BM_VerifyEquivalence)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "surftex/spectral.hpp"
#include "surftex/stationary.hpp"

namespace {

surftex::HeightField noise_field(int n) {
  surftex::RandomStream rng(1);
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  for (double& x : v) x = rng.normal();
  return surftex::HeightField(n, n, 1.0, std::move(v));
}

void BM_Rpn(benchmark::State& state) {
  const auto in = noise_field(static_cast<int>(state.range(0)));
  surftex::RandomStream rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(surftex::rpn(in, rng));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}
BENCHMARK(BM_Rpn)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Adsn(benchmark::State& state) {
  const auto in = noise_field(static_cast<int>(state.range(0)));
  surftex::RandomStream rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(surftex::adsn(in, rng));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}
BENCHMARK(BM_Adsn)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_PeriodicDecompose(benchmark::State& state) {
  const auto in = noise_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(surftex::periodic_decompose(in));
}
BENCHMARK(BM_PeriodicDecompose)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

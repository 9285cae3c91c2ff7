#include <benchmark/benchmark.h>

#include "surftex/quilt.hpp"

namespace {

surftex::ErrorSurface surface(int n, int o, surftex::OverlapRegion region) {
  surftex::RandomStream rng(7);
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  for (double& x : v) x = rng.uniform();
  return surftex::ErrorSurface(n, o, region, std::move(v));
}

void BM_MinSeam(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto e = surface(n, n / 2, surftex::OverlapRegion::left);
  for (auto _ : state) benchmark::DoNotOptimize(surftex::min_seam(e, surftex::Orientation::vertical));
}
BENCHMARK(BM_MinSeam)->Arg(128)->Arg(256)->Arg(512);

void BM_MinSeamL(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto e = surface(n, n / 2, surftex::OverlapRegion::l_shaped);
  surftex::SeamPath prev{surftex::Orientation::horizontal, {}};
  for (int x = n - 1; x >= 0; --x) prev.cells.push_back({x, n / 4});
  for (auto _ : state) benchmark::DoNotOptimize(surftex::min_seam_L(e, prev));
}
BENCHMARK(BM_MinSeamL)->Arg(128)->Arg(256);

void BM_StitchAll(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  const surftex::StitchPlan plan{4, 128, 64};
  auto provider = [](int, int, surftex::RandomStream& rng) {
    std::vector<double> v(128 * 128);
    for (double& x : v) x = rng.normal();
    return surftex::HeightField(128, 128, 1.0, std::move(v));
  };
  for (auto _ : state)
    benchmark::DoNotOptimize(surftex::stitch_all(plan, provider, surftex::RandomStream(1), {threads}));
}
BENCHMARK(BM_StitchAll)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

#include <benchmark/benchmark.h>

#include "surftex/mill/field.hpp"

namespace {

// range(0): square size in pixels at 12.2 um; range(1): overlap in percent.
void BM_MillRender(benchmark::State& state) {
  surftex::mill::MillConfig cfg;
  cfg.alpha = static_cast<double>(state.range(1)) / 100.0;
  const int n = static_cast<int>(state.range(0));
  const surftex::mill::Viewport view{0, 0, n, n, 12.2};
  std::size_t rings = 0;
  for (auto _ : state) {
    const auto r = surftex::mill::render(cfg, view);
    rings = r.rings_visible;
    benchmark::DoNotOptimize(r.field);
  }
  state.counters["rings"] = static_cast<double>(rings);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) * n);
}
BENCHMARK(BM_MillRender)
    ->ArgsProduct({{256, 512, 1024}, {20, 50, 80}})
    ->Unit(benchmark::kMillisecond);

void BM_MillThreads(benchmark::State& state) {
  surftex::mill::MillConfig cfg;
  const surftex::mill::Viewport view{0, 0, 512, 512, 12.2};
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(surftex::mill::render(cfg, view, {128, threads}));
}
BENCHMARK(BM_MillThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

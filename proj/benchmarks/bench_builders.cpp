#include <benchmark/benchmark.h>

#include "tranche/depth.hpp"
#include "tranche/gallery.hpp"
#include "tranche/mahavier.hpp"

using namespace tranche;

namespace {

void BM_BuildXhat(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_Xhat(d, 2000).size());
}
BENCHMARK(BM_BuildXhat)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_BuildXinf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  lap_table();
  for (auto _ : state) benchmark::DoNotOptimize(build_Xinf(n, 5000).size());
}
BENCHMARK(BM_BuildXinf)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_WarsawArcSearch(benchmark::State& state) {
  const GalleryModel m = warsaw_model(static_cast<std::size_t>(state.range(0)));
  const Cloud& y = m.y0.front().cloud;
  for (auto _ : state) benchmark::DoNotOptimize(approximate(m, y, 0.0).min);
}
BENCHMARK(BM_WarsawArcSearch)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

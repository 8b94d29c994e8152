#include <benchmark/benchmark.h>

#include <random>

#include "tranche/hilbert.hpp"
#include "tranche/mahavier.hpp"

using namespace tranche;

namespace {

Cloud random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c(n * dim);
  for (double& v : c) v = u(rng);
  return Cloud("random", 0.0, dim, std::move(c));
}

void BM_HausdorffFast(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Cloud a = random_cloud(n, 6, 1), b = random_cloud(n, 6, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff(a, b, HausdorffMode::Fast));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HausdorffFast)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_HausdorffBrute(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Cloud a = random_cloud(n, 6, 1), b = random_cloud(n, 6, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_brute(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HausdorffBrute)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

// Consecutive A_n are shifted, nearly coincident clouds.
void BM_HausdorffOrbitSpaces(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Cloud a = build_A_n(n, 5000), b = build_A_n(n + 1, 5000);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff(a, b));
}
BENCHMARK(BM_HausdorffOrbitSpaces)->DenseRange(1, 5, 2)->Unit(benchmark::kMillisecond);

}  // namespace

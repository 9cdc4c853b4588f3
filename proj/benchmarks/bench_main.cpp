#include <benchmark/benchmark.h>

#include <random>

#include "pdsim/diagram.hpp"
#include "pdsim/landscape.hpp"
#include "pdsim/persistence.hpp"
#include "pdsim/rips.hpp"
#include "pdsim/sampling.hpp"
#include "pdsim/similarity.hpp"

namespace {

using namespace pdsim;

PersistenceDiagram random_diagram(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> birth(0.0, 10.0), life(0.05, 4.0);
  PersistenceDiagram d{1, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double b = birth(rng);
    d.finite_pairs.push_back({b, b + life(rng)});
  }
  return d;
}

void BM_BuildRips(benchmark::State& state) {
  const auto d = distance_matrix(sample_annulus(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(build_rips(d, 2, 0.6));
}
BENCHMARK(BM_BuildRips)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_RipsPersistence(benchmark::State& state) {
  const auto d = distance_matrix(sample_annulus(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(rips_persistence(d, 1, 0.6));
}
BENCHMARK(BM_RipsPersistence)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Reduce(benchmark::State& state) {
  const auto c = build_rips(distance_matrix(sample_disc(200, 2)), 2, 0.4);
  const bool clearing = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(reduce(c, {.clearing = clearing}));
}
BENCHMARK(BM_Reduce)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Bottleneck(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_diagram(n, 3), b = random_diagram(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck(a, b));
}
BENCHMARK(BM_Bottleneck)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMicrosecond);

void BM_Wasserstein(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_diagram(n, 5), b = random_diagram(n, 6);
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein(a, b, 2.0));
}
BENCHMARK(BM_Wasserstein)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMicrosecond);

void BM_BuildLandscape(benchmark::State& state) {
  const auto d = random_diagram(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(build_landscape(d));
}
BENCHMARK(BM_BuildLandscape)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

void BM_CosineSimilarity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_diagram(n, 8), b = random_diagram(n, 9);
  for (auto _ : state) benchmark::DoNotOptimize(cosine_similarity(a, b));
}
BENCHMARK(BM_CosineSimilarity)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();

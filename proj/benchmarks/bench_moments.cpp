#include <benchmark/benchmark.h>

#include "rmbmi/invariants.hpp"
#include "rmbmi/moments.hpp"
#include "rmbmi/synthetic.hpp"

using namespace rmbmi;

static void BM_GeometricMoments(benchmark::State& state) {
  const auto img = synthetic_texture(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(geometric_moments(img, 6));
  state.SetItemsProcessed(state.iterations() * img.size());
}
BENCHMARK(BM_GeometricMoments)->Arg(65)->Arg(257)->Arg(513);

static void BM_ComplexMomentsDirect(benchmark::State& state) {
  const auto img = synthetic_texture(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(complex_moments_direct(img, 6));
  state.SetItemsProcessed(state.iterations() * img.size());
}
BENCHMARK(BM_ComplexMomentsDirect)->Arg(65)->Arg(257);

static void BM_Rmbmi6FromMoments(benchmark::State& state) {
  const auto gm = geometric_moments(synthetic_texture(129, 4), 6);
  for (auto _ : state) benchmark::DoNotOptimize(extract_features(gm, FeatureFamily::rmbmi6, true));
}
BENCHMARK(BM_Rmbmi6FromMoments);

#include <benchmark/benchmark.h>

#include <numbers>

#include "rmbmi/experiment.hpp"
#include "rmbmi/synthetic.hpp"

using namespace rmbmi;

// One degraded test image: canvas resize, rotation + scale, blur.
static void BM_Degrade(benchmark::State& state) {
  const auto img = synthetic_texture(257, 5);
  Degradation d;
  d.model = MotionModel::rcm;
  d.omega = std::numbers::pi / 4;
  d.alpha = std::numbers::pi / 100;
  d.exposure = 3.0;
  d.similarity = true;
  d.transform = {std::numbers::pi / 3, static_cast<double>(state.range(0)) / 10.0};
  for (auto _ : state) benchmark::DoNotOptimize(degrade(img, d));
}
BENCHMARK(BM_Degrade)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_Similarity(benchmark::State& state) {
  const auto img = synthetic_texture(257, 6);
  for (auto _ : state) benchmark::DoNotOptimize(apply_similarity(img, {0.7, 1.2}));
}
BENCHMARK(BM_Similarity);

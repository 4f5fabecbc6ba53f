#include <benchmark/benchmark.h>

#include <numbers>

#include "rmbmi/blur.hpp"
#include "rmbmi/synthetic.hpp"
#include "warp.hpp"

using namespace rmbmi;

static void BM_WarpRow(benchmark::State& state) {
  const auto isa = static_cast<detail::WarpIsa>(state.range(0));
  const int n = 257;
  const detail::BilinearSource src(synthetic_texture(n, 1));
  const auto spans = detail::RowSpans::full(n, n);
  const auto map = detail::InverseMap::similarity(0.3, 1.0);
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (auto _ : state) {
    detail::accumulate_warp(src, map, spans, 0, n, out, isa);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_WarpRow)
    ->Arg(static_cast<int>(detail::WarpIsa::scalar))
    ->Arg(static_cast<int>(detail::WarpIsa::avx2))
    ->Arg(static_cast<int>(detail::WarpIsa::avx512));

// n_steps rotations of a 257 x 257 texture
static void BM_SynthesizeBlur(benchmark::State& state) {
  const auto img = synthetic_texture(257, 2);
  const auto profile = profile_ucm(std::numbers::pi / 4, 3.0);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_blur(img, profile, steps));
  state.SetItemsProcessed(state.iterations() * steps * img.size());
}
BENCHMARK(BM_SynthesizeBlur)->Arg(180)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_BlurConstant(benchmark::State& state) {
  const auto ucm = profile_ucm(0.4, 3.0);
  const auto uacm = profile_uacm(0.4, 0.05, 3.0);
  const auto& p = state.range(0) == 0 ? ucm : uacm;
  for (auto _ : state) benchmark::DoNotOptimize(blur_constant(p, 3));
}
BENCHMARK(BM_BlurConstant)->Arg(0)->Arg(1);

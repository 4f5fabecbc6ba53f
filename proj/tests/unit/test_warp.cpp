#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "warp.hpp"

using namespace rmbmi;
using namespace rmbmi::detail;

namespace {

std::vector<double> warp(const GrayImage& img, const InverseMap& map, const RowSpans& spans,
                         WarpIsa isa) {
  const BilinearSource src(img);
  std::vector<double> out(img.size(), 0.0);
  accumulate_warp(src, map, spans, 0, img.height(), out, isa);
  return out;
}

}  // namespace

TEST(Warp, SampleMatchesHandBilinear) {
  const GrayImage img(2, 2, std::vector<double>{0.0, 10.0, 20.0, 30.0});
  const BilinearSource src(img);
  EXPECT_DOUBLE_EQ(src.sample(0.5, 0.5), 15.0);
  EXPECT_DOUBLE_EQ(src.sample(0.25, 0.0), 2.5);
  // half a pixel outside, halfway to the zero border
  EXPECT_DOUBLE_EQ(src.sample(-0.5, 1.0), 10.0);
  EXPECT_DOUBLE_EQ(src.sample(1.5, 1.0), 15.0);
  EXPECT_DOUBLE_EQ(src.sample(-1.0, -1.0), 0.0);
}

TEST(Warp, SimdMatchesScalar) {
  // odd widths exercise the masked row tails
  for (const int size : {37, 64, 129}) {
    const auto img = oracle::bumps(size, size - 4, size);
    for (const auto& map : {InverseMap::similarity(0.37, 1.0), InverseMap::similarity(-2.2, 1.3),
                            InverseMap::similarity(1.0, 0.7)}) {
      for (const auto& spans : {RowSpans::full(size, size - 4),
                                RowSpans::disk(size, size - 4, 0.4 * size)}) {
        const auto ref = warp(img, map, spans, WarpIsa::scalar);
        for (const auto isa : {WarpIsa::avx2, WarpIsa::avx512, WarpIsa::best}) {
          const auto got = warp(img, map, spans, isa);
          for (std::size_t i = 0; i < ref.size(); ++i) {
            ASSERT_NEAR(got[i], ref[i], 1e-12 * (1.0 + std::abs(ref[i])))
                << "size " << size << " pixel " << i;
          }
        }
      }
    }
  }
}

TEST(Warp, IdentityAddsSourceExactly) {
  const auto img = oracle::bumps(31, 31, 2);
  const auto out = warp(img, InverseMap{}, RowSpans::full(31, 31), WarpIsa::best);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], img.pixels()[i]);
}

TEST(Warp, DiskSpansCoverRadius) {
  const auto spans = RowSpans::disk(21, 21, 5.0);
  ASSERT_EQ(spans.begin.size(), 21u);
  EXPECT_EQ(spans.begin[10], 5);
  EXPECT_EQ(spans.end[10], 16);
  EXPECT_GE(spans.begin[0], spans.end[0]);
}

TEST(Warp, SimilarityMapInvertsTransform) {
  const auto m = InverseMap::similarity(0.5, 2.0);
  // the forward transform sends (1, 0) to 2 (cos 0.5, sin 0.5)
  const double x = 2.0 * std::cos(0.5);
  const double y = 2.0 * std::sin(0.5);
  EXPECT_NEAR(m.xx * x + m.xy * y, 1.0, 1e-15);
  EXPECT_NEAR(m.yx * x + m.yy * y, 0.0, 1e-15);
}

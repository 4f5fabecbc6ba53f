#include "warp.hpp"

#include <algorithm>
#include <cmath>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define RMBMI_X86 1
#endif

namespace rmbmi::detail {

InverseMap InverseMap::similarity(double angle, double scale) {
  const double c = std::cos(angle) / scale;
  const double s = std::sin(angle) / scale;
  // R(-angle) / scale
  return {c, s, -s, c};
}

BilinearSource::BilinearSource(const GrayImage& img)
    : width_(img.width()),
      height_(img.height()),
      stride_(img.width() + 2 * kBorder),
      original_(img.pixels().begin(), img.pixels().end()) {
  const std::size_t padded = static_cast<std::size_t>(stride_) * (height_ + 2 * kBorder);
  buffer_.assign(padded, 0.0);
  for (int y = 0; y < height_; ++y) {
    const auto row = img.row(y);
    std::copy(row.begin(), row.end(),
              buffer_.begin() + static_cast<std::ptrdiff_t>(y + kBorder) * stride_ + kBorder);
  }
}

double BilinearSource::sample(double x, double y) const noexcept {
  if (!(x > -1.0 && x < width_ && y > -1.0 && y < height_)) return 0.0;
  const double px = x + kBorder;
  const double py = y + kBorder;
  const int ix = static_cast<int>(px);
  const int iy = static_cast<int>(py);
  const double fx = px - ix;
  const double fy = py - iy;
  const double* p = buffer_.data() + static_cast<std::ptrdiff_t>(iy) * stride_ + ix;
  const double top = p[0] + fx * (p[1] - p[0]);
  const double bottom = p[stride_] + fx * (p[stride_ + 1] - p[stride_]);
  return top + fy * (bottom - top);
}

RowSpans RowSpans::full(int width, int height) {
  return {std::vector<int>(height, 0), std::vector<int>(height, width)};
}

RowSpans RowSpans::disk(int width, int height, double radius) {
  RowSpans spans{std::vector<int>(height, 0), std::vector<int>(height, 0)};
  const double cx = 0.5 * (width - 1);
  const double cy = 0.5 * (height - 1);
  for (int y = 0; y < height; ++y) {
    const double v = y - cy;
    const double h2 = radius * radius - v * v;
    if (h2 < 0.0) continue;
    const double h = std::sqrt(h2);
    const int b = std::max(0, static_cast<int>(std::ceil(cx - h)));
    const int e = std::min(width, static_cast<int>(std::floor(cx + h)) + 1);
    if (b < e) {
      spans.begin[y] = b;
      spans.end[y] = e;
    }
  }
  return spans;
}

namespace {

// Narrows [lo, hi] to the x where offset + slope * x lies in [min, max].
void clip_linear(double offset, double slope, double min, double max, double& lo,
                 double& hi) {
  if (slope == 0.0) {
    if (offset < min || offset > max) {
      lo = 1.0;
      hi = 0.0;
    }
    return;
  }
  double a = (min - offset) / slope;
  double b = (max - offset) / slope;
  if (a > b) std::swap(a, b);
  lo = std::max(lo, a);
  hi = std::min(hi, b);
}

// One output row: dst[x] += bilinear(base, ox + xx * x, oy + yx * x) for
// x in [x0, x1], in padded-buffer coordinates. Callers guarantee every tap
// lies inside the buffer.
struct RowArgs {
  int stride;
  double ox, oy, xx, yx;
  int x0, x1;
  double* dst;
};

void row_scalar(const double* base, RowArgs a) {
  const int stride = a.stride;
  for (int x = a.x0; x <= a.x1; ++x) {
    const double px = a.ox + a.xx * x;
    const double py = a.oy + a.yx * x;
    const int ix = static_cast<int>(px);
    const int iy = static_cast<int>(py);
    const double fx = px - ix;
    const double fy = py - iy;
    const double* p = base + static_cast<std::ptrdiff_t>(iy) * stride + ix;
    const double p00 = p[0], p01 = p[1], p10 = p[stride], p11 = p[stride + 1];
    const double top = p00 + fx * (p01 - p00);
    const double bottom = p10 + fx * (p11 - p10);
    a.dst[x] += top + fy * (bottom - top);
  }
}

#ifdef RMBMI_X86

// The SIMD kernels handle the ragged end of a row with masked gathers and
// stores; calling back into scalar code for the tail costs more than the
// whole vector loop.

__attribute__((target("avx2,fma"))) inline __m256d avx2_tail_mask(int remaining) {
  const __m256i lanes = _mm256_setr_epi64x(0, 1, 2, 3);
  return _mm256_castsi256_pd(_mm256_cmpgt_epi64(_mm256_set1_epi64x(remaining), lanes));
}

__attribute__((target("avx2,fma"))) void row_avx2_double(const double* base, RowArgs a) {
  const __m256d vxx = _mm256_set1_pd(a.xx);
  const __m256d vyx = _mm256_set1_pd(a.yx);
  const __m256d vox = _mm256_set1_pd(a.ox);
  const __m256d voy = _mm256_set1_pd(a.oy);
  const __m256d lane = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m128i vstride = _mm_set1_epi32(a.stride);
  for (int x = a.x0; x <= a.x1; x += 4) {
    const __m256d mask = avx2_tail_mask(a.x1 - x + 1);
    const __m256d xs = _mm256_add_pd(_mm256_set1_pd(x), lane);
    const __m256d px = _mm256_fmadd_pd(vxx, xs, vox);
    const __m256d py = _mm256_fmadd_pd(vyx, xs, voy);
    const __m128i ix = _mm256_cvttpd_epi32(px);
    const __m128i iy = _mm256_cvttpd_epi32(py);
    const __m256d fx = _mm256_sub_pd(px, _mm256_cvtepi32_pd(ix));
    const __m256d fy = _mm256_sub_pd(py, _mm256_cvtepi32_pd(iy));
    const __m128i idx = _mm_add_epi32(_mm_mullo_epi32(iy, vstride), ix);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d p00 = _mm256_mask_i32gather_pd(zero, base, idx, mask, 8);
    const __m256d p01 = _mm256_mask_i32gather_pd(zero, base + 1, idx, mask, 8);
    const __m256d p10 = _mm256_mask_i32gather_pd(zero, base + a.stride, idx, mask, 8);
    const __m256d p11 = _mm256_mask_i32gather_pd(zero, base + a.stride + 1, idx, mask, 8);
    const __m256d top = _mm256_fmadd_pd(fx, _mm256_sub_pd(p01, p00), p00);
    const __m256d bottom = _mm256_fmadd_pd(fx, _mm256_sub_pd(p11, p10), p10);
    const __m256d v = _mm256_fmadd_pd(fy, _mm256_sub_pd(bottom, top), top);
    const __m256i store_mask = _mm256_castpd_si256(mask);
    _mm256_maskstore_pd(a.dst + x, store_mask,
                        _mm256_add_pd(_mm256_maskload_pd(a.dst + x, store_mask), v));
  }
}

__attribute__((target("avx512f,avx2,fma"))) void row_avx512_double(const double* base,
                                                                   RowArgs a) {
  const __m512d vxx = _mm512_set1_pd(a.xx);
  const __m512d vyx = _mm512_set1_pd(a.yx);
  const __m512d vox = _mm512_set1_pd(a.ox);
  const __m512d voy = _mm512_set1_pd(a.oy);
  const __m512d lane = _mm512_setr_pd(0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0);
  const __m256i vstride = _mm256_set1_epi32(a.stride);
  for (int x = a.x0; x <= a.x1; x += 8) {
    const int remaining = a.x1 - x + 1;
    const __mmask8 mask = remaining >= 8 ? 0xff : static_cast<__mmask8>((1u << remaining) - 1);
    const __m512d xs = _mm512_add_pd(_mm512_set1_pd(x), lane);
    const __m512d px = _mm512_fmadd_pd(vxx, xs, vox);
    const __m512d py = _mm512_fmadd_pd(vyx, xs, voy);
    const __m256i ix = _mm512_cvttpd_epi32(px);
    const __m256i iy = _mm512_cvttpd_epi32(py);
    const __m512d fx = _mm512_sub_pd(px, _mm512_cvtepi32_pd(ix));
    const __m512d fy = _mm512_sub_pd(py, _mm512_cvtepi32_pd(iy));
    const __m256i idx = _mm256_add_epi32(_mm256_mullo_epi32(iy, vstride), ix);
    const __m512d zero = _mm512_setzero_pd();
    const __m512d p00 = _mm512_mask_i32gather_pd(zero, mask, idx, base, 8);
    const __m512d p01 = _mm512_mask_i32gather_pd(zero, mask, idx, base + 1, 8);
    const __m512d p10 = _mm512_mask_i32gather_pd(zero, mask, idx, base + a.stride, 8);
    const __m512d p11 = _mm512_mask_i32gather_pd(zero, mask, idx, base + a.stride + 1, 8);
    const __m512d top = _mm512_fmadd_pd(fx, _mm512_sub_pd(p01, p00), p00);
    const __m512d bottom = _mm512_fmadd_pd(fx, _mm512_sub_pd(p11, p10), p10);
    const __m512d v = _mm512_fmadd_pd(fy, _mm512_sub_pd(bottom, top), top);
    _mm512_mask_storeu_pd(a.dst + x, mask,
                          _mm512_add_pd(_mm512_maskz_loadu_pd(mask, a.dst + x), v));
  }
}

#endif

WarpIsa resolve(WarpIsa isa) {
#ifdef RMBMI_X86
  static const bool has_avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const bool has_avx512 = has_avx2 && __builtin_cpu_supports("avx512f");
  if (isa == WarpIsa::best) {
    return has_avx512 ? WarpIsa::avx512 : has_avx2 ? WarpIsa::avx2 : WarpIsa::scalar;
  }
  if (isa == WarpIsa::avx512 && !has_avx512) return has_avx2 ? WarpIsa::avx2 : WarpIsa::scalar;
  if (isa == WarpIsa::avx2 && !has_avx2) return WarpIsa::scalar;
  return isa;
#else
  (void)isa;
  return WarpIsa::scalar;
#endif
}

void run_row(const BilinearSource& src, WarpIsa isa, RowArgs a) {
  switch (isa) {
#ifdef RMBMI_X86
    case WarpIsa::avx512:
      row_avx512_double(src.data(), a);
      return;
    case WarpIsa::avx2:
      row_avx2_double(src.data(), a);
      return;
#endif
    default:
      row_scalar(src.data(), a);
  }
}

}  // namespace

WarpIsa active_warp_isa() { return resolve(WarpIsa::best); }

void accumulate_warp(const BilinearSource& src, const InverseMap& map,
                     const RowSpans& spans, int row_begin, int row_end,
                     std::span<double> out, WarpIsa isa) {
  const int width = src.width();
  const int height = src.height();

  if (map.is_identity()) {
    const auto pixels = src.original();
    for (int y = row_begin; y < row_end; ++y) {
      const std::size_t offset = static_cast<std::size_t>(y) * width;
      for (int x = spans.begin[y]; x < spans.end[y]; ++x) out[offset + x] += pixels[offset + x];
    }
    return;
  }

  isa = resolve(isa);
  const double cx = src.center_x();
  const double cy = src.center_y();
  constexpr double kB = BilinearSource::kBorder;

  for (int y = row_begin; y < row_end; ++y) {
    if (spans.begin[y] >= spans.end[y]) continue;
    const double v = y - cy;
    // Source position for output column x (padded buffer coordinates):
    //   px = ox + xx * x,  py = oy + yx * x
    const double ox = cx + kB + map.xy * v - map.xx * cx;
    const double oy = cy + kB + map.yy * v - map.yx * cx;

    // Keep samples inside [-1, W] x [-1, H]; the border absorbs rounding.
    double lo = spans.begin[y];
    double hi = spans.end[y] - 1;
    clip_linear(ox, map.xx, kB - 1.0, kB + width, lo, hi);
    clip_linear(oy, map.yx, kB - 1.0, kB + height, lo, hi);
    if (lo > hi) continue;

    const RowArgs args{src.stride(),
                       ox,
                       oy,
                       map.xx,
                       map.yx,
                       static_cast<int>(std::ceil(lo)),
                       static_cast<int>(std::floor(hi)),
                       out.data() + static_cast<std::ptrdiff_t>(y) * width};
    run_row(src, isa, args);
  }
}

}  // namespace rmbmi::detail

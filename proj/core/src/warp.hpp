#pragma once

#include <span>
#include <vector>

#include "rmbmi/image.hpp"

namespace rmbmi::detail {

/// Inverse map about the image center: src - c = M (dst - c),
/// M = [[xx, xy], [yx, yy]].
struct InverseMap {
  double xx = 1.0;
  double xy = 0.0;
  double yx = 0.0;
  double yy = 1.0;

  /// Inverse of "rotate by angle, then scale by s".
  static InverseMap similarity(double angle, double scale);

  bool is_identity() const noexcept { return xx == 1.0 && xy == 0.0 && yx == 0.0 && yy == 1.0; }
};

/// Zero-bordered copy of an image for branch-free bilinear sampling.
/// Sample points anywhere in [-1, W] x [-1, H] are valid.
class BilinearSource {
 public:
  explicit BilinearSource(const GrayImage& img);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double center_x() const noexcept { return 0.5 * (width_ - 1); }
  double center_y() const noexcept { return 0.5 * (height_ - 1); }

  /// Zero-padded bilinear sample at source coordinate (x, y).
  double sample(double x, double y) const noexcept;

  static constexpr int kBorder = 2;

  const double* data() const noexcept { return buffer_.data(); }
  int stride() const noexcept { return stride_; }
  /// Unpadded pixels, for exact identity steps.
  std::span<const double> original() const noexcept { return original_; }

 private:
  int width_;
  int height_;
  int stride_;
  std::vector<double> buffer_;
  std::vector<double> original_;
};

/// Per-row [begin, end) column ranges of output pixels worth visiting.
struct RowSpans {
  std::vector<int> begin;
  std::vector<int> end;

  static RowSpans full(int width, int height);
  /// Pixels whose distance to the center is at most `radius`.
  static RowSpans disk(int width, int height, double radius);
};

enum class WarpIsa { best, scalar, avx2, avx512 };

/// The instruction set accumulate_warp picks by default on this machine.
WarpIsa active_warp_isa();

/// out[y][x] += sample(src, map(x, y)) for rows [row_begin, row_end) within
/// `spans`. `out` has the source's dimensions. Identity maps add the source
/// pixels exactly.
void accumulate_warp(const BilinearSource& src, const InverseMap& map,
                     const RowSpans& spans, int row_begin, int row_end,
                     std::span<double> out, WarpIsa isa = WarpIsa::best);

}  // namespace rmbmi::detail

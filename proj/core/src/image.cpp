#include "rmbmi/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "warp.hpp"

namespace rmbmi {

namespace {

void check_dimensions(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
}

bool valid_intensity(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

GrayImage::GrayImage(int width, int height, double fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  if (!valid_intensity(fill)) throw std::invalid_argument("fill intensity must be finite and >= 0");
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("pixel count " + std::to_string(pixels_.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
  if (!std::all_of(pixels_.begin(), pixels_.end(), valid_intensity)) {
    throw std::invalid_argument("intensities must be finite and >= 0");
  }
}

void GrayImage::set(int x, int y, double value) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    throw std::out_of_range("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") outside image");
  }
  if (!valid_intensity(value)) throw std::invalid_argument("intensity must be finite and >= 0");
  pixels_[static_cast<std::size_t>(y) * width_ + x] = value;
}

GrayImage resize_bilinear(const GrayImage& img, int new_width, int new_height) {
  check_dimensions(new_width, new_height);
  const int w = img.width();
  const int h = img.height();
  auto source_coord = [](int i, int from, int to) {
    if (to == 1) return 0.5 * (from - 1);
    return static_cast<double>(i) * (from - 1) / (to - 1);
  };

  std::vector<double> out(static_cast<std::size_t>(new_width) * new_height);
  for (int y = 0; y < new_height; ++y) {
    const double sy = source_coord(y, h, new_height);
    const int y0 = std::min(static_cast<int>(sy), h - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fy = sy - y0;
    for (int x = 0; x < new_width; ++x) {
      const double sx = source_coord(x, w, new_width);
      const int x0 = std::min(static_cast<int>(sx), w - 1);
      const int x1 = std::min(x0 + 1, w - 1);
      const double fx = sx - x0;
      const double top = img(x0, y0) + fx * (img(x1, y0) - img(x0, y0));
      const double bottom = img(x0, y1) + fx * (img(x1, y1) - img(x0, y1));
      // max() guards against -0.0 and rounding below zero
      out[static_cast<std::size_t>(y) * new_width + x] = std::max(0.0, top + fy * (bottom - top));
    }
  }
  return GrayImage(new_width, new_height, std::move(out));
}

GrayImage apply_similarity(const GrayImage& img, const SimilarityParams& params) {
  if (!(params.scale > 0.0) || !std::isfinite(params.scale)) {
    throw std::invalid_argument("similarity scale must be positive");
  }
  if (!std::isfinite(params.angle)) throw std::invalid_argument("similarity angle must be finite");
  const detail::BilinearSource source(img);
  const auto spans = detail::RowSpans::full(img.width(), img.height());
  std::vector<double> out(img.size(), 0.0);
  detail::accumulate_warp(source, detail::InverseMap::similarity(params.angle, params.scale),
                          spans, 0, img.height(), out);
  for (double& v : out) v = std::max(0.0, v);
  return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage pad_centered(const GrayImage& img, int margin) {
  if (margin < 0) throw std::invalid_argument("padding margin must be >= 0");
  if (margin == 0) return img;
  const int w = img.width() + 2 * margin;
  const int h = img.height() + 2 * margin;
  std::vector<double> out(static_cast<std::size_t>(w) * h, 0.0);
  for (int y = 0; y < img.height(); ++y) {
    const auto row = img.row(y);
    std::copy(row.begin(), row.end(),
              out.begin() + static_cast<std::ptrdiff_t>(y + margin) * w + margin);
  }
  return GrayImage(w, h, std::move(out));
}

GrayImage crop_centered(const GrayImage& img, int margin) {
  if (margin < 0) throw std::invalid_argument("crop margin must be >= 0");
  if (margin == 0) return img;
  const int w = img.width() - 2 * margin;
  const int h = img.height() - 2 * margin;
  if (w <= 0 || h <= 0) throw std::invalid_argument("crop margin removes the whole image");
  std::vector<double> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    const auto row = img.row(y + margin);
    std::copy(row.begin() + margin, row.begin() + margin + w,
              out.begin() + static_cast<std::ptrdiff_t>(y) * w);
  }
  return GrayImage(w, h, std::move(out));
}

double support_radius(const GrayImage& img) {
  const double cx = img.center_x();
  const double cy = img.center_y();
  double r2 = 0.0;
  for (int y = 0; y < img.height(); ++y) {
    const auto row = img.row(y);
    const double v = y - cy;
    for (int x = 0; x < img.width(); ++x) {
      if (row[x] != 0.0) r2 = std::max(r2, (x - cx) * (x - cx) + v * v);
    }
  }
  return std::sqrt(r2);
}

int margin_for_scale(const GrayImage& img, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
  // bilinear footprint adds up to sqrt(2) px around the scaled support
  const double needed = scale * support_radius(img) + 2.0;
  const double inscribed = 0.5 * (std::min(img.width(), img.height()) - 1);
  if (needed <= inscribed) return 0;
  return static_cast<int>(std::ceil(needed - inscribed));
}

double signal_power(const GrayImage& img) {
  double sum = 0.0;
  for (double v : img.pixels()) sum += v * v;
  return sum / static_cast<double>(img.size());
}

std::vector<double> gaussian_noise_field(const GrayImage& img, double snr_db,
                                         std::uint64_t seed) {
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
    throw std::invalid_argument("SNR must be finite or +inf");
  }
  std::vector<double> noise(img.size(), 0.0);
  if (snr_db == std::numeric_limits<double>::infinity()) return noise;
  const double sigma = std::sqrt(signal_power(img) / std::pow(10.0, snr_db / 10.0));
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& n : noise) n = sigma * normal(engine);
  return noise;
}

GrayImage add_gaussian_noise(const GrayImage& img, double snr_db, std::uint64_t seed) {
  if (snr_db == std::numeric_limits<double>::infinity()) return img;
  const auto noise = gaussian_noise_field(img, snr_db, seed);
  std::vector<double> out(img.pixels().begin(), img.pixels().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i] + noise[i], 0.0, 255.0);
  return GrayImage(img.width(), img.height(), std::move(out));
}

}  // namespace rmbmi

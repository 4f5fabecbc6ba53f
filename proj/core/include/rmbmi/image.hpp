#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rmbmi {

/// Dense grayscale image of finite, non-negative double intensities.
///
/// Pixels are stored row-major. Geometry is expressed relative to the
/// continuous center ((width-1)/2, (height-1)/2); for odd sizes that is the
/// middle pixel. The x axis points right and the y axis points down, so a
/// positive rotation angle turns +x towards +y.
class GrayImage {
 public:
  GrayImage(int width, int height, double fill = 0.0);
  GrayImage(int width, int height, std::vector<double> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  double center_x() const noexcept { return 0.5 * (width_ - 1); }
  double center_y() const noexcept { return 0.5 * (height_ - 1); }

  double operator()(int x, int y) const noexcept {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }

  /// Checked write; rejects negative or non-finite values.
  void set(int x, int y, double value);

  std::span<const double> pixels() const noexcept { return pixels_; }
  std::span<const double> row(int y) const noexcept {
    return {pixels_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<double> pixels_;
};

/// Rotation by `angle` radians followed by isotropic scaling, both about the
/// image center.
struct SimilarityParams {
  double angle = 0.0;
  double scale = 1.0;
};

/// Bilinear resize. Corner pixels map to corner pixels, so resizing to the
/// same size is the identity.
GrayImage resize_bilinear(const GrayImage& img, int new_width, int new_height);

/// g(r, theta) = f(r / s, theta - phi) sampled with bilinear interpolation.
/// Pixels outside the source frame read as 0. Output keeps the input size.
GrayImage apply_similarity(const GrayImage& img, const SimilarityParams& params);

/// Adds `margin` zero pixels on every side; the center stays at the same
/// content location.
GrayImage pad_centered(const GrayImage& img, int margin);
/// Removes `margin` pixels from every side.
GrayImage crop_centered(const GrayImage& img, int margin);

/// Largest distance from the image center to a nonzero pixel (0 for a black image).
double support_radius(const GrayImage& img);

/// Margin that pad_centered needs so that content scaled by `scale` and
/// rotated arbitrarily still fits the frame. Zero when it already fits.
int margin_for_scale(const GrayImage& img, double scale);

/// Mean squared intensity.
double signal_power(const GrayImage& img);

/// The i.i.d. zero-mean Gaussian field that add_gaussian_noise injects, with
/// variance signal_power / 10^(snr_db / 10). All zeros for snr_db = +inf.
std::vector<double> gaussian_noise_field(const GrayImage& img, double snr_db,
                                         std::uint64_t seed);

/// Adds gaussian_noise_field(img, snr_db, seed) and clamps to [0, 255].
GrayImage add_gaussian_noise(const GrayImage& img, double snr_db, std::uint64_t seed);

}  // namespace rmbmi

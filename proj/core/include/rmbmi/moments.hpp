#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmbmi/image.hpp"

namespace rmbmi {

/// Moments indexed by (p, q) with p + q <= max_order, stored by order and
/// then by q: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
template <class T>
class MomentTable {
 public:
  explicit MomentTable(int max_order) : max_order_(max_order) {
    if (max_order < 0) throw std::invalid_argument("moment order must be non-negative");
    values_.assign(index(max_order, 0) + static_cast<std::size_t>(max_order) + 1, T{});
  }

  static constexpr std::size_t index(int p, int q) noexcept {
    const auto n = static_cast<std::size_t>(p + q);
    return n * (n + 1) / 2 + static_cast<std::size_t>(q);
  }

  int max_order() const noexcept { return max_order_; }
  bool contains(int p, int q) const noexcept { return p >= 0 && q >= 0 && p + q <= max_order_; }

  const T& operator()(int p, int q) const noexcept { return values_[index(p, q)]; }
  T& operator()(int p, int q) noexcept { return values_[index(p, q)]; }

  const T& at(int p, int q) const {
    if (!contains(p, q)) {
      throw std::out_of_range("moment (" + std::to_string(p) + "," + std::to_string(q) +
                              ") outside order " + std::to_string(max_order_));
    }
    return values_[index(p, q)];
  }

  std::span<const T> values() const noexcept { return values_; }

  friend bool operator==(const MomentTable&, const MomentTable&) = default;

 private:
  int max_order_;
  std::vector<T> values_;
};

using GeometricMomentSet = MomentTable<double>;
using ComplexMomentSet = MomentTable<std::complex<double>>;

/// Origin for moment coordinates, in pixel units (x right, y down).
struct MomentOrigin {
  double x = 0.0;
  double y = 0.0;
};

MomentOrigin image_center(const GrayImage& img);

/// m_pq = sum x^p y^q f(x, y) over pixel centers, relative to the image center.
GeometricMomentSet geometric_moments(const GrayImage& img, int max_order);
GeometricMomentSet geometric_moments(const GrayImage& img, int max_order, MomentOrigin origin);
/// Same sums over an arbitrary real field (negative values allowed), stored
/// row-major as w x h.
GeometricMomentSet geometric_moments(int w, int h, std::span<const double> values, int max_order,
                                     MomentOrigin origin);

/// c_pq = sum (x + iy)^p (x - iy)^q f(x, y), summed directly over pixels.
ComplexMomentSet complex_moments_direct(const GrayImage& img, int max_order);

/// Binomial expansion of c_pq in terms of m_pq. Entries with q > p are the
/// conjugates of their mirrors, so the symmetry holds exactly.
ComplexMomentSet complex_from_geometric(const GeometricMomentSet& gm);

/// m_pq / m00^((p+q)/2 + 1). Throws DegenerateInput when m00 <= 0.
GeometricMomentSet normalize_geometric(const GeometricMomentSet& gm);

/// c_pq / c00^((p+q)/2 + 1) with c00 taken as a positive real.
/// Throws DegenerateInput when c00 <= 0.
ComplexMomentSet normalize_complex(const ComplexMomentSet& cm);

}  // namespace rmbmi

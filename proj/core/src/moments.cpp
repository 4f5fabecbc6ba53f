#include "rmbmi/moments.hpp"

#include <cmath>

#include "compensated.hpp"
#include "rmbmi/errors.hpp"

namespace rmbmi {

namespace {

void check_order(int max_order) {
  if (max_order < 0) throw std::invalid_argument("moment order must be non-negative");
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// i^k
std::complex<double> i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double scale_exponent(int p, int q) { return 0.5 * (p + q) + 1.0; }

}  // namespace

MomentOrigin image_center(const GrayImage& img) { return {img.center_x(), img.center_y()}; }

GeometricMomentSet geometric_moments(const GrayImage& img, int max_order) {
  return geometric_moments(img, max_order, image_center(img));
}

GeometricMomentSet geometric_moments(const GrayImage& img, int max_order, MomentOrigin origin) {
  return geometric_moments(img.width(), img.height(), img.pixels(), max_order, origin);
}

GeometricMomentSet geometric_moments(int w, int h, std::span<const double> values, int max_order,
                                     MomentOrigin origin) {
  check_order(max_order);
  if (w <= 0 || h <= 0 || values.size() != static_cast<std::size_t>(w) * h) {
    throw std::invalid_argument("field size does not match its dimensions");
  }
  const int n = max_order;

  // x^p per column, laid out [p][x]
  std::vector<double> xpow(static_cast<std::size_t>(n + 1) * w);
  for (int x = 0; x < w; ++x) {
    const double u = x - origin.x;
    double v = 1.0;
    for (int p = 0; p <= n; ++p) {
      xpow[static_cast<std::size_t>(p) * w + x] = v;
      v *= u;
    }
  }

  std::vector<detail::CompensatedSum> acc(GeometricMomentSet::index(n, 0) + n + 1);
  std::vector<detail::CompensatedSum> row_sum(n + 1);
  for (int y = 0; y < h; ++y) {
    const double* row = values.data() + static_cast<std::size_t>(y) * w;
    for (auto& s : row_sum) s = {};
    for (int x = 0; x < w; ++x) {
      const double f = row[x];
      if (f == 0.0) continue;
      for (int p = 0; p <= n; ++p) row_sum[p].add(f * xpow[static_cast<std::size_t>(p) * w + x]);
    }
    const double v = y - origin.y;
    for (int p = 0; p <= n; ++p) {
      const double s = row_sum[p].value();
      if (s == 0.0) continue;
      double yq = 1.0;
      for (int q = 0; p + q <= n; ++q) {
        acc[GeometricMomentSet::index(p, q)].add(s * yq);
        yq *= v;
      }
    }
  }

  GeometricMomentSet out(n);
  for (int order = 0; order <= n; ++order) {
    for (int q = 0; q <= order; ++q) {
      out(order - q, q) = acc[GeometricMomentSet::index(order - q, q)].value();
    }
  }
  return out;
}

ComplexMomentSet complex_moments_direct(const GrayImage& img, int max_order) {
  check_order(max_order);
  const int n = max_order;
  const double cx = img.center_x();
  const double cy = img.center_y();

  std::vector<detail::CompensatedComplexSum> acc(ComplexMomentSet::index(n, 0) + n + 1);
  std::vector<std::complex<double>> zpow(n + 1);
  std::vector<double> r2pow(n / 2 + 1);
  for (int y = 0; y < img.height(); ++y) {
    const auto row = img.row(y);
    const double v = y - cy;
    for (int x = 0; x < img.width(); ++x) {
      const double f = row[x];
      if (f == 0.0) continue;
      const std::complex<double> z(x - cx, v);
      zpow[0] = 1.0;
      for (int k = 1; k <= n; ++k) zpow[k] = zpow[k - 1] * z;
      const double r2 = std::norm(z);
      r2pow[0] = 1.0;
      for (int k = 1; k <= n / 2; ++k) r2pow[k] = r2pow[k - 1] * r2;
      // (x+iy)^p (x-iy)^q = |z|^(2q) z^(p-q) for p >= q
      for (int q = 0; 2 * q <= n; ++q) {
        for (int p = q; p + q <= n; ++p) {
          acc[ComplexMomentSet::index(p, q)].add(f * r2pow[q] * zpow[p - q]);
        }
      }
    }
  }

  ComplexMomentSet out(n);
  for (int q = 0; 2 * q <= n; ++q) {
    for (int p = q; p + q <= n; ++p) {
      const auto c = acc[ComplexMomentSet::index(p, q)].value();
      out(p, q) = p == q ? std::complex<double>(c.real(), 0.0) : c;
      out(q, p) = std::conj(out(p, q));
    }
  }
  return out;
}

ComplexMomentSet complex_from_geometric(const GeometricMomentSet& gm) {
  const int n = gm.max_order();
  ComplexMomentSet out(n);
  for (int q = 0; 2 * q <= n; ++q) {
    for (int p = q; p + q <= n; ++p) {
      detail::CompensatedComplexSum sum;
      for (int a = 0; a <= p; ++a) {
        for (int b = 0; b <= q; ++b) {
          const double coef = binomial(p, a) * binomial(q, b) * ((q - b) % 2 == 0 ? 1.0 : -1.0);
          sum.add(coef * i_power(p + q - a - b) * gm(a + b, p + q - a - b));
        }
      }
      out(p, q) = sum.value();
      out(q, p) = std::conj(out(p, q));
    }
  }
  // c_pp is real; conj() above would leave a signed zero
  for (int p = 0; 2 * p <= n; ++p) out(p, p) = out(p, p).real();
  return out;
}

GeometricMomentSet normalize_geometric(const GeometricMomentSet& gm) {
  const double m00 = gm(0, 0);
  if (!(m00 > 0.0)) throw DegenerateInput("zero total mass: m00 must be positive");
  GeometricMomentSet out(gm.max_order());
  for (int order = 0; order <= gm.max_order(); ++order) {
    for (int q = 0; q <= order; ++q) {
      const int p = order - q;
      out(p, q) = gm(p, q) / std::pow(m00, scale_exponent(p, q));
    }
  }
  out(0, 0) = 1.0;
  return out;
}

ComplexMomentSet normalize_complex(const ComplexMomentSet& cm) {
  const auto c00 = cm(0, 0);
  if (!(c00.real() > 0.0)) throw DegenerateInput("zero total mass: c00 must be positive");
  if (std::abs(c00.imag()) > 1e-10 * c00.real()) {
    throw std::invalid_argument("c00 must be real");
  }
  const double mass = c00.real();
  ComplexMomentSet out(cm.max_order());
  for (int order = 0; order <= cm.max_order(); ++order) {
    for (int q = 0; q <= order; ++q) {
      const int p = order - q;
      out(p, q) = cm(p, q) / std::pow(mass, scale_exponent(p, q));
    }
  }
  out(0, 0) = 1.0;
  return out;
}

}  // namespace rmbmi

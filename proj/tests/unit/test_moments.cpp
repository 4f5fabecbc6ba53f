#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "rmbmi/errors.hpp"
#include "rmbmi/image.hpp"
#include "rmbmi/moments.hpp"
#include "rmbmi/synthetic.hpp"

using namespace rmbmi;

namespace {

// |a - b| against the absolute moment of that order
double scaled_error(std::complex<double> a, std::complex<long double> b, long double scale) {
  return static_cast<double>(std::abs(std::complex<long double>(a) - b) / scale);
}

}  // namespace

TEST(MomentTable, Layout) {
  EXPECT_EQ(GeometricMomentSet::index(0, 0), 0u);
  EXPECT_EQ(GeometricMomentSet::index(1, 0), 1u);
  EXPECT_EQ(GeometricMomentSet::index(0, 1), 2u);
  EXPECT_EQ(GeometricMomentSet::index(0, 2), 5u);
  GeometricMomentSet t(3);
  EXPECT_EQ(t.values().size(), 10u);
  EXPECT_THROW(t.at(2, 2), std::out_of_range);
  EXPECT_THROW(GeometricMomentSet(-1), std::invalid_argument);
}

TEST(Moments, SinglePixel) {
  GrayImage img(5, 5);
  img.set(4, 1, 3.0);  // (2, -1) from the center
  const auto m = geometric_moments(img, 3);
  EXPECT_EQ(m(0, 0), 3.0);
  EXPECT_EQ(m(1, 0), 6.0);
  EXPECT_EQ(m(0, 1), -3.0);
  EXPECT_EQ(m(2, 1), -12.0);
  const auto c = complex_moments_direct(img, 3);
  // z = 2 - i
  const std::complex<double> z(2.0, -1.0);
  EXPECT_NEAR(std::abs(c(2, 1) - 3.0 * z * z * std::conj(z)), 0.0, 1e-12);
}

TEST(Moments, MatchesNaiveOracle) {
  const auto img = synthetic_texture(65, 9);
  const auto gm = geometric_moments(img, 6);
  const auto direct = complex_moments_direct(img, 6);
  for (int p = 0; p <= 6; ++p) {
    for (int q = 0; p + q <= 6; ++q) {
      const auto want = oracle::geometric_moment(img, p, q, 32.0, 32.0);
      EXPECT_LE(std::abs(gm(p, q) - want), 1e-12 * oracle::absolute_moment(img, p + q));
      const auto cw = oracle::complex_moment(img, p, q);
      EXPECT_LT(scaled_error(direct(p, q), cw, oracle::absolute_moment(img, p + q)), 1e-12);
    }
  }
}

TEST(Moments, SymmetricImageHasNoOddMoments) {
  const auto disk = synthetic_disk(33, 33, 10.0, 1.0);
  const auto m = geometric_moments(disk, 5);
  EXPECT_EQ(m(1, 0), 0.0);
  EXPECT_EQ(m(0, 1), 0.0);
  EXPECT_EQ(m(1, 1), 0.0);
  EXPECT_EQ(m(2, 1), 0.0);
  EXPECT_EQ(m(2, 0), m(0, 2));
}

TEST(Moments, DiskAgainstContinuousArea) {
  const auto disk = synthetic_disk(257, 257, 64.0, 255.0);
  const auto c = complex_from_geometric(geometric_moments(disk, 2));
  EXPECT_NEAR(c(0, 0).real(), oracle::disk_mass(64.0, 255.0), 5e-3 * oracle::disk_mass(64.0, 255.0));
  EXPECT_NEAR(c(1, 1).real(), oracle::disk_c11(64.0, 255.0), 5e-3 * oracle::disk_c11(64.0, 255.0));
}

TEST(Moments, LowOrderIdentities) {
  const auto img = oracle::bumps(47, 39, 12);
  const auto m = geometric_moments(img, 2);
  const auto c = complex_from_geometric(m);
  EXPECT_EQ(c(1, 0), std::complex<double>(m(1, 0), m(0, 1)));
  EXPECT_DOUBLE_EQ(c(1, 1).real(), m(2, 0) + m(0, 2));
  EXPECT_EQ(c(1, 1).imag(), 0.0);
  EXPECT_NEAR(c(2, 0).real(), m(2, 0) - m(0, 2), 1e-12 * c(1, 1).real());
  EXPECT_NEAR(c(2, 0).imag(), 2.0 * m(1, 1), 1e-12 * c(1, 1).real());
}

TEST(Moments, TwoPathsAgree) {
  for (const int size : {65, 100, 129}) {
    const auto img = synthetic_texture(size, size);
    const auto a = complex_moments_direct(img, 6);
    const auto b = complex_from_geometric(geometric_moments(img, 6));
    for (int p = 0; p <= 6; ++p) {
      for (int q = 0; p + q <= 6; ++q) {
        const double scale = static_cast<double>(oracle::absolute_moment(img, p + q));
        EXPECT_LT(std::abs(a(p, q) - b(p, q)) / scale, 1e-10) << size << " " << p << "," << q;
      }
    }
  }
}

TEST(Moments, ConjugateSymmetry) {
  const auto c = complex_from_geometric(geometric_moments(oracle::bumps(51, 51, 3), 6));
  for (int p = 0; p <= 6; ++p) {
    for (int q = 0; p + q <= 6; ++q) {
      EXPECT_LE(std::abs(c(p, q) - std::conj(c(q, p))), 1e-12 * std::abs(c(p, q)));
    }
  }
}

TEST(Moments, Linearity) {
  const auto f = oracle::bumps(41, 41, 1);
  const auto g = oracle::bumps(41, 41, 2);
  const double a = 0.75, b = 2.5;
  std::vector<double> mix(f.size());
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * f.pixels()[i] + b * g.pixels()[i];
  const auto mf = geometric_moments(f, 6);
  const auto mg = geometric_moments(g, 6);
  const auto mm = geometric_moments(GrayImage(41, 41, mix), 6);
  for (int p = 0; p <= 6; ++p) {
    for (int q = 0; p + q <= 6; ++q) {
      const double want = a * mf(p, q) + b * mg(p, q);
      const double scale = static_cast<double>(a * oracle::absolute_moment(f, p + q) +
                                               b * oracle::absolute_moment(g, p + q));
      EXPECT_LE(std::abs(mm(p, q) - want), 1e-14 * scale) << p << "," << q;
    }
  }
}

TEST(Moments, ShiftTheorem) {
  const auto img = oracle::bumps(45, 37, 7);
  const MomentOrigin c = image_center(img);
  const MomentOrigin o{c.x + 3.25, c.y - 1.5};
  const double dx = c.x - o.x, dy = c.y - o.y;
  const auto m = geometric_moments(img, 2);
  const auto s = geometric_moments(img, 2, o);
  const double tol = 1e-11 * m(0, 0) * 400.0;
  EXPECT_NEAR(s(0, 0), m(0, 0), tol);
  EXPECT_NEAR(s(1, 0), m(1, 0) + dx * m(0, 0), tol);
  EXPECT_NEAR(s(0, 1), m(0, 1) + dy * m(0, 0), tol);
  EXPECT_NEAR(s(2, 0), m(2, 0) + 2 * dx * m(1, 0) + dx * dx * m(0, 0), tol);
  EXPECT_NEAR(s(1, 1), m(1, 1) + dx * m(0, 1) + dy * m(1, 0) + dx * dy * m(0, 0), tol);
  EXPECT_NEAR(s(0, 2), m(0, 2) + 2 * dy * m(0, 1) + dy * dy * m(0, 0), tol);
}

TEST(Moments, RawFieldAllowsNegativeValues) {
  const std::vector<double> v{-1.0, 2.0, 0.5, -0.25};
  const auto m = geometric_moments(2, 2, v, 1, MomentOrigin{0.5, 0.5});
  EXPECT_DOUBLE_EQ(m(0, 0), 1.25);
  EXPECT_DOUBLE_EQ(m(1, 0), 0.5 * (1.0 + 2.0 - 0.5 - 0.25));
  EXPECT_THROW(geometric_moments(3, 2, v, 1, MomentOrigin{}), std::invalid_argument);
}

TEST(Normalize, Examples) {
  const auto img = oracle::bumps(33, 33, 2);
  const auto m = geometric_moments(img, 4);
  const auto n = normalize_geometric(m);
  EXPECT_EQ(n(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(n(2, 0), m(2, 0) / (m(0, 0) * m(0, 0)));
  EXPECT_DOUBLE_EQ(n(1, 2), m(1, 2) / std::pow(m(0, 0), 2.5));

  // constant v on a fixed support: m~20 = m20(v) / m00(v)^2 falls as 1/v
  const auto scaled = [&](double v) {
    std::vector<double> px(img.pixels().begin(), img.pixels().end());
    for (auto& p : px) p *= v;
    return normalize_geometric(geometric_moments(GrayImage(33, 33, px), 2))(2, 0);
  };
  EXPECT_NEAR(scaled(4.0), n(2, 0) / 4.0, 1e-15);
}

TEST(Normalize, SimilarityRemovesScaleAndRotationPhase) {
  const auto img = pad_centered(oracle::bumps(81, 81, 5), 30);
  const auto base = normalize_complex(complex_from_geometric(geometric_moments(img, 4)));
  const double phi = 0.6;
  const auto moved = normalize_complex(
      complex_from_geometric(geometric_moments(apply_similarity(img, {phi, 1.3}), 4)));
  EXPECT_NEAR(std::abs(moved(1, 1) - base(1, 1)) / base(1, 1).real(), 0.0, 5e-3);
  // c_pq picks up exp(i (p - q) phi)
  const auto expected = base(2, 0) * std::polar(1.0, 2 * phi);
  EXPECT_LT(std::abs(moved(2, 0) - expected) / std::abs(expected), 1e-2);
}

TEST(Normalize, Errors) {
  const GrayImage black(5, 5);
  EXPECT_THROW(normalize_geometric(geometric_moments(black, 2)), DegenerateInput);
  EXPECT_THROW(normalize_complex(complex_moments_direct(black, 2)), DegenerateInput);
  EXPECT_THROW(complex_moments_direct(black, -1), std::invalid_argument);
}

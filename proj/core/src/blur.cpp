#include "rmbmi/blur.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "rmbmi/parallel.hpp"
#include "warp.hpp"

namespace rmbmi {

namespace {

constexpr double kStepAngle = 0.005;
constexpr int kMinSteps = 180;

void require_exposure(double exposure) {
  if (!(exposure > 0.0) || !std::isfinite(exposure)) {
    throw std::invalid_argument("exposure time must be positive and finite");
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

// (exp(ix) - 1) / (ix) without cancellation near 0.
std::complex<double> phasor_mean(double x) {
  if (x == 0.0) return {1.0, 0.0};
  const double h = std::sin(0.5 * x);
  return {std::sin(x) / x, 2.0 * h * h / x};
}

std::complex<double> segment_quadrature(const MotionSegment& seg, int delta) {
  using boost::math::quadrature::gauss_kronrod;
  const double d = delta;
  auto re = [&](double t) { return std::cos(d * seg(t)); };
  auto im = [&](double t) { return std::sin(d * seg(t)); };
  constexpr unsigned kMaxDepth = 25;
  constexpr double kTol = 1e-13;
  const double r = gauss_kronrod<double, 31>::integrate(re, seg.t_start, seg.t_end, kMaxDepth, kTol);
  const double i = gauss_kronrod<double, 31>::integrate(im, seg.t_start, seg.t_end, kMaxDepth, kTol);
  return {r, i};
}

std::complex<double> segment_closed_form(const MotionSegment& seg, int delta) {
  const double L = seg.duration();
  return L * std::polar(1.0, delta * seg.a0) * phasor_mean(delta * seg.a1 * L);
}

}  // namespace

MotionProfile::MotionProfile(std::vector<MotionSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("motion profile needs at least one segment");
  if (segments_.front().t_start != 0.0) {
    throw std::invalid_argument("first motion segment must start at t = 0");
  }
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    auto& seg = segments_[k];
    require_finite(seg.t_start, "segment start");
    require_finite(seg.t_end, "segment end");
    require_finite(seg.a0, "coefficient a0");
    require_finite(seg.a1, "coefficient a1");
    require_finite(seg.a2, "coefficient a2");
    if (!(seg.t_end > seg.t_start)) {
      throw std::invalid_argument("motion segment " + std::to_string(k) +
                                  " must have t_end > t_start");
    }
    if (k > 0) {
      const double prev = segments_[k - 1].t_end;
      if (std::abs(seg.t_start - prev) > 1e-12 * std::max(1.0, prev)) {
        throw std::invalid_argument("motion segment " + std::to_string(k) +
                                    " does not start where the previous one ends");
      }
      seg.t_start = prev;
    }
  }
}

double MotionProfile::operator()(double t) const {
  if (!(t >= 0.0 && t <= exposure())) {
    throw std::out_of_range("t = " + std::to_string(t) + " outside exposure [0, " +
                            std::to_string(exposure()) + "]");
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double value, const MotionSegment& s) { return value < s.t_start; });
  return (*std::prev(it))(t);
}

double MotionProfile::total_sweep() const {
  double sweep = 0.0;
  for (const auto& seg : segments_) {
    const double start = seg(seg.t_start);
    const double end = seg(seg.t_end);
    if (seg.a2 != 0.0) {
      const double turn = seg.t_start - seg.a1 / (2.0 * seg.a2);
      if (turn > seg.t_start && turn < seg.t_end) {
        const double mid = seg(turn);
        sweep += std::abs(mid - start) + std::abs(end - mid);
        continue;
      }
    }
    sweep += std::abs(end - start);
  }
  return sweep;
}

std::string to_string(MotionModel model) {
  switch (model) {
    case MotionModel::ucm: return "ucm";
    case MotionModel::uacm: return "uacm";
    case MotionModel::rcm: return "rcm";
  }
  return "?";
}

MotionModel parse_motion_model(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "ucm") return MotionModel::ucm;
  if (lower == "uacm") return MotionModel::uacm;
  if (lower == "rcm") return MotionModel::rcm;
  throw std::invalid_argument("unknown motion model '" + name + "' (expected ucm, uacm or rcm)");
}

MotionProfile profile_ucm(double omega, double exposure) {
  require_exposure(exposure);
  require_finite(omega, "omega");
  return MotionProfile({{0.0, exposure, 0.0, omega, 0.0}});
}

MotionProfile profile_uacm(double omega, double alpha, double exposure) {
  require_exposure(exposure);
  require_finite(omega, "omega");
  require_finite(alpha, "alpha");
  return MotionProfile({{0.0, exposure, 0.0, omega, 0.5 * alpha}});
}

MotionProfile profile_rcm(double omega, double alpha, double exposure) {
  require_exposure(exposure);
  require_finite(omega, "omega");
  require_finite(alpha, "alpha");
  const double half = 0.5 * exposure;
  return MotionProfile({{0.0, half, 0.0, omega, 0.0},
                        {half, exposure, omega * half, -omega, -0.5 * alpha}});
}

MotionProfile make_profile(MotionModel model, double omega, double alpha, double exposure) {
  switch (model) {
    case MotionModel::ucm: return profile_ucm(omega, exposure);
    case MotionModel::uacm: return profile_uacm(omega, alpha, exposure);
    case MotionModel::rcm: return profile_rcm(omega, alpha, exposure);
  }
  throw std::invalid_argument("unknown motion model");
}

double psi_eval(const MotionProfile& profile, double t) { return profile(t); }

int default_blur_steps(const MotionProfile& profile) {
  const double steps = std::ceil(profile.total_sweep() / kStepAngle);
  return std::max(kMinSteps, static_cast<int>(std::min(steps, 1e8)));
}

GrayImage synthesize_blur(const GrayImage& img, const MotionProfile& profile, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  return synthesize_blur(img, profile, BlurOptions{n_steps, 1});
}

GrayImage synthesize_blur(const GrayImage& img, const MotionProfile& profile,
                          const BlurOptions& options) {
  if (options.n_steps < 0) throw std::invalid_argument("n_steps must be >= 1");
  const int n = options.n_steps == 0 ? default_blur_steps(profile) : options.n_steps;

  const double dt = profile.exposure() / n;
  std::vector<double> angles(n);
  for (int i = 0; i < n; ++i) angles[i] = profile((i + 0.5) * dt);
  // n equal copies average to one copy; skipping the sum keeps that exact
  if (std::all_of(angles.begin(), angles.end(), [&](double a) { return a == angles[0]; })) {
    angles.resize(1);
  }
  std::vector<detail::InverseMap> maps;
  maps.reserve(angles.size());
  for (const double a : angles) maps.push_back(detail::InverseMap::similarity(a, 1.0));

  // Rotation preserves the distance to the center, so only output pixels
  // within reach of the input support can be nonzero.
  const detail::BilinearSource source(img);
  const auto spans =
      detail::RowSpans::disk(img.width(), img.height(), support_radius(img) + 1.5);
  std::vector<double> sum(img.size(), 0.0);

  constexpr int kRowsPerBlock = 16;
  const int blocks = (img.height() + kRowsPerBlock - 1) / kRowsPerBlock;
  parallel_for(static_cast<std::size_t>(blocks), options.threads, [&](std::size_t b) {
    const int row_begin = static_cast<int>(b) * kRowsPerBlock;
    const int row_end = std::min(img.height(), row_begin + kRowsPerBlock);
    for (const auto& map : maps) {
      detail::accumulate_warp(source, map, spans, row_begin, row_end, sum);
    }
  });

  const auto copies = static_cast<double>(maps.size());
  for (double& v : sum) v = std::max(0.0, v / copies);
  return GrayImage(img.width(), img.height(), std::move(sum));
}

std::complex<double> blur_constant(const MotionProfile& profile, int delta) {
  if (delta < 1) throw std::invalid_argument("delta must be >= 1");
  std::complex<double> total = 0.0;
  for (const auto& seg : profile.segments()) {
    total += seg.a2 == 0.0 ? segment_closed_form(seg, delta) : segment_quadrature(seg, delta);
  }
  return total / profile.exposure();
}

std::complex<double> blur_constant_quadrature(const MotionProfile& profile, int delta) {
  if (delta < 1) throw std::invalid_argument("delta must be >= 1");
  std::complex<double> total = 0.0;
  for (const auto& seg : profile.segments()) total += segment_quadrature(seg, delta);
  return total / profile.exposure();
}

}  // namespace rmbmi

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rmbmi/image.hpp"

namespace rmbmi {

/// psi(t) = a0 + a1 (t - t_start) + a2 (t - t_start)^2 on [t_start, t_end].
struct MotionSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;

  double operator()(double t) const noexcept {
    const double tau = t - t_start;
    return a0 + tau * (a1 + tau * a2);
  }
  double duration() const noexcept { return t_end - t_start; }

  friend bool operator==(const MotionSegment&, const MotionSegment&) = default;
};

/// Piecewise-quadratic angular displacement over the exposure [0, T].
class MotionProfile {
 public:
  /// Segments must be contiguous, start at 0 and have positive durations.
  explicit MotionProfile(std::vector<MotionSegment> segments);

  const std::vector<MotionSegment>& segments() const noexcept { return segments_; }
  double exposure() const noexcept { return segments_.back().t_end; }

  /// psi(t); boundary points belong to the later segment.
  double operator()(double t) const;

  /// Total variation of psi over the exposure (radians swept).
  double total_sweep() const;

  friend bool operator==(const MotionProfile&, const MotionProfile&) = default;

 private:
  std::vector<MotionSegment> segments_;
};

enum class MotionModel { ucm, uacm, rcm };

std::string to_string(MotionModel model);
MotionModel parse_motion_model(const std::string& name);

/// Uniform circular motion: psi(t) = omega t.
MotionProfile profile_ucm(double omega, double exposure);
/// Uniformly accelerated circular motion: psi(t) = omega t + alpha t^2 / 2.
MotionProfile profile_uacm(double omega, double alpha, double exposure);
/// Reciprocating motion: omega t up to T/2, then reversing with deceleration alpha.
MotionProfile profile_rcm(double omega, double alpha, double exposure);
/// Dispatch on the model; `alpha` is ignored for UCM.
MotionProfile make_profile(MotionModel model, double omega, double alpha, double exposure);

double psi_eval(const MotionProfile& profile, double t);

/// max(180, ceil(total_sweep / 0.005)): keeps each step under ~0.3 degrees.
int default_blur_steps(const MotionProfile& profile);

struct BlurOptions {
  int n_steps = 0;  ///< 0 selects default_blur_steps(profile)
  int threads = 1;
};

/// Rotational motion blur: mean of the image rotated by psi(t_i) at the
/// midpoints t_i of n_steps uniform subintervals of [0, T].
GrayImage synthesize_blur(const GrayImage& img, const MotionProfile& profile, int n_steps);
GrayImage synthesize_blur(const GrayImage& img, const MotionProfile& profile,
                          const BlurOptions& options = {});

/// (1/T) * integral over [0, T] of exp(i * delta * psi(t)). Closed form on
/// linear segments, adaptive Gauss-Kronrod (relative tolerance 1e-10) on
/// quadratic ones.
std::complex<double> blur_constant(const MotionProfile& profile, int delta);

/// Same quantity by adaptive quadrature on every segment.
std::complex<double> blur_constant_quadrature(const MotionProfile& profile, int delta);

}  // namespace rmbmi

#include "rmbmi/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rmbmi/image_io.hpp"
#include "rmbmi/random.hpp"

namespace rmbmi {

namespace {

struct Blob {
  double cx, cy, cos_t, sin_t, inv_a2, inv_b2, amp;
};

double smoothstep(double e0, double e1, double x) {
  const double t = std::clamp((x - e0) / (e1 - e0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace

std::string to_string(TextureLayout layout) {
  return layout == TextureLayout::full_frame ? "full_frame" : "object";
}

TextureLayout parse_texture_layout(const std::string& name) {
  if (name == "object") return TextureLayout::object;
  if (name == "full_frame") return TextureLayout::full_frame;
  throw std::invalid_argument("texture layout must be 'object' or 'full_frame', got '" + name + "'");
}

GrayImage synthetic_texture(int size, std::uint64_t seed, TextureLayout layout) {
  if (size < 3) throw std::invalid_argument("synthetic_texture: size must be at least 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  constexpr double pi = std::numbers::pi;

  // Everything stays inside `frame`, so rotations about the center keep the
  // content in view. The object is a disk of radius `object` placed off center.
  const double c = 0.5 * (size - 1);
  const double frame = 0.94 * c;
  const double extent = uniform(0.55, 0.85);
  const double shift = uniform(0.3, 1.0);
  const double offset_dir = uniform(0.0, 2.0 * pi);
  const bool full = layout == TextureLayout::full_frame;
  const double object = full ? frame : frame * extent;
  const double offset = (frame - object) * shift;
  const double ox = offset * std::cos(offset_dir);
  const double oy = offset * std::sin(offset_dir);
  const double fade = std::max(2.0, 0.06 * object);
  const double ramp_floor = uniform(0.1, 0.6);
  const double ramp_power = uniform(1.0, 3.0);

  std::vector<Blob> blobs(6 + static_cast<int>(unit(rng) * 5.0));
  for (auto& b : blobs) {
    const double angle = uniform(0.0, 2.0 * pi);
    const double dist = object * std::sqrt(uniform(0.0, 0.64));
    const double major = object * uniform(0.08, 0.3);
    const double minor = major * uniform(0.4, 1.0);
    const double theta = uniform(0.0, pi);
    b = {ox + dist * std::cos(angle), oy + dist * std::sin(angle), std::cos(theta),
         std::sin(theta), 1.0 / (2.0 * major * major), 1.0 / (2.0 * minor * minor),
         uniform(0.3, 1.0)};
  }
  const double ripple_amp = uniform(0.1, 0.3);
  const double ripple_freq = uniform(2.0, 6.0) / object;
  const double ripple_dir = uniform(0.0, pi);
  const double ripple_phase = uniform(0.0, 2.0 * pi);
  const double base = uniform(0.1, 0.25);
  const double peak_level = uniform(80.0, 250.0);
  const double light = uniform(0.0, 0.6);
  const double light_dir = uniform(0.0, 2.0 * pi);

  std::vector<double> field(static_cast<std::size_t>(size) * size, 0.0);
  double peak = 0.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double u = x - c;
      const double v = y - c;
      const double r = std::hypot(u - ox, v - oy);
      const double envelope = (1.0 - smoothstep(object - fade, object, r)) *
                              (1.0 - smoothstep(frame - fade, frame, std::hypot(u, v)));
      if (envelope <= 0.0) continue;
      double value = base;
      for (const auto& b : blobs) {
        const double du = u - b.cx;
        const double dv = v - b.cy;
        const double along = du * b.cos_t + dv * b.sin_t;
        const double across = -du * b.sin_t + dv * b.cos_t;
        value += b.amp * std::exp(-along * along * b.inv_a2 - across * across * b.inv_b2);
      }
      const double phase =
          ripple_freq * (u * std::cos(ripple_dir) + v * std::sin(ripple_dir)) + ripple_phase;
      value += ripple_amp * 0.5 * (1.0 + std::cos(phase));
      // more weight toward the rim keeps higher-order moments well conditioned
      const double ramp = ramp_floor + (1.0 - ramp_floor) * std::pow(r / object, ramp_power);
      const double shade =
          1.0 + light * (u * std::cos(light_dir) + v * std::sin(light_dir)) / frame;
      const double f = envelope * ramp * value * shade;
      field[static_cast<std::size_t>(y) * size + x] = f;
      peak = std::max(peak, f);
    }
  }
  if (peak > 0.0) {
    for (auto& f : field) f *= peak_level / peak;
  }
  return GrayImage(size, size, std::move(field));
}

GrayImage synthetic_disk(int width, int height, double radius, double value) {
  GrayImage img(width, height);
  const double cx = img.center_x();
  const double cy = img.center_y();
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (std::hypot(x - cx, y - cy) <= radius) img.set(x, y, value);
    }
  }
  return img;
}

std::vector<GrayImage> synthetic_corpus(int count, int size, std::uint64_t seed,
                                        TextureLayout layout) {
  std::vector<GrayImage> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back(synthetic_texture(size, derive_seed(seed, {static_cast<std::uint64_t>(i)}), layout));
  }
  return out;
}

void write_corpus(const std::filesystem::path& dir, const std::vector<GrayImage>& images) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < images.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "img_%02zu.pgm", i);
    save_pgm(dir / name, images[i]);
  }
}

}  // namespace rmbmi

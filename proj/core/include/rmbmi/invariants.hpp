#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rmbmi/image.hpp"
#include "rmbmi/moments.hpp"

namespace rmbmi {

/// Named feature values for one image. A feature is flagged unreliable when
/// it is a ratio whose denominator moment is numerically zero; its value is
/// then 0 and distances skip it.
struct FeatureVector {
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<bool> unreliable;

  std::size_t size() const noexcept { return values.size(); }
  void push(std::string name, double value, bool flagged = false);
  std::optional<std::size_t> find(const std::string& name) const;
  bool any_unreliable() const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Keeps the named features, in the order given. Throws std::invalid_argument
/// for unknown names.
FeatureVector select_features(const FeatureVector& fv, const std::vector<std::string>& names);

/// A ratio c_a / c_b is trusted when |c_b| >= kDegenerateRelative * c00 *
/// rho^order_b with rho = sqrt(c11 / c00), the radius of gyration. The bound
/// scales like c_b under intensity and spatial scaling, so raw and normalized
/// moments flag the same features. Blurring over a whole number of turns
/// drives c_b to interpolation residue (about 1e-6 of this scale, against
/// 1e-2 or more for a live harmonic); 1e-4 sits between the two.
inline constexpr double kDegenerateRelative = 1e-4;
double denominator_floor(double c00, double c11, int order);

/// {c00, c11, c22, c10/c21, c20/c31}; ratios contribute real then imaginary
/// parts. With `similarity_normalized` the input must come from
/// normalize_complex and c00 is dropped (6 values).
FeatureVector rmbmi4(const ComplexMomentSet& cm, bool similarity_normalized);

/// rmbmi4 plus c33 and the ratios c10/c32, c30/c41, c20/c42, c40/c51
/// (16 values, 15 when normalized).
FeatureVector rmbmi6(const ComplexMomentSet& cm, bool similarity_normalized);

/// RMBMI0..RMBMI6 evaluated from geometric moments in closed form.
/// RMBMI4 is Im(c10/c21) for c_pq built from (x + iy)^p (x - iy)^q.
/// RMBMI0 = m00 is dropped when normalized.
FeatureVector rmbmi_geometric(const GeometricMomentSet& gm, bool similarity_normalized);

/// The seven Hu invariants h1..h7 in the usual numbering, from normalized
/// moments taken about the image center.
FeatureVector hu_moments(const GeometricMomentSet& gm_normalized);
/// h2..h6
FeatureVector hm5(const FeatureVector& hu);
/// h2, h3, h5, h7
FeatureVector lmbmi(const FeatureVector& hu);

enum class FeatureFamily { rmbmi4, rmbmi6, geometric, hu7, hm5, lmbmi };

std::string to_string(FeatureFamily family);
FeatureFamily parse_feature_family(const std::string& name);
/// Moment order the family needs.
int required_order(FeatureFamily family);

/// Names the family produces, in order.
std::vector<std::string> feature_names(FeatureFamily family, bool similarity_normalized);

/// Moments and features of an image in one call. Hu families always use
/// normalized moments.
FeatureVector extract_features(const GrayImage& img, FeatureFamily family,
                               bool similarity_normalized);
FeatureVector extract_features(const GeometricMomentSet& gm, FeatureFamily family,
                               bool similarity_normalized);

}  // namespace rmbmi

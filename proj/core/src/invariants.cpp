#include "rmbmi/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace rmbmi {

void FeatureVector::push(std::string name, double value, bool flagged) {
  if (flagged || !std::isfinite(value)) {
    flagged = true;
    value = 0.0;
  }
  names.push_back(std::move(name));
  values.push_back(value);
  unreliable.push_back(flagged);
}

std::optional<std::size_t> FeatureVector::find(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

bool FeatureVector::any_unreliable() const {
  return std::find(unreliable.begin(), unreliable.end(), true) != unreliable.end();
}

FeatureVector select_features(const FeatureVector& fv, const std::vector<std::string>& names) {
  FeatureVector out;
  for (const auto& name : names) {
    const auto i = fv.find(name);
    if (!i) throw std::invalid_argument("unknown feature '" + name + "'");
    out.names.push_back(name);
    out.values.push_back(fv.values[*i]);
    out.unreliable.push_back(fv.unreliable[*i]);
  }
  return out;
}

double denominator_floor(double c00, double c11, int order) {
  if (!(c00 > 0.0)) return 0.0;
  const double rho = std::sqrt(std::max(c11, 0.0) / c00);
  return kDegenerateRelative * c00 * std::pow(rho, order);
}

namespace {

void require_order(int have, int need, const char* what) {
  if (have < need) {
    throw std::invalid_argument(std::string(what) + " needs moments up to order " +
                                std::to_string(need));
  }
}

void require_normalized(double zeroth, const char* what) {
  if (std::abs(zeroth - 1.0) > 1e-12) {
    throw std::invalid_argument(std::string(what) +
                                ": similarity-normalized input must have unit zeroth moment");
  }
}

struct Ratio {
  int pa, qa, pb, qb;
};

void push_ratio(FeatureVector& fv, const ComplexMomentSet& cm, Ratio r) {
  const auto a = cm(r.pa, r.qa);
  const auto b = cm(r.pb, r.qb);
  const bool flagged =
      !(std::abs(b) > denominator_floor(cm(0, 0).real(), cm(1, 1).real(), r.pb + r.qb));
  const auto v = flagged ? std::complex<double>() : a / b;
  const std::string label = "c" + std::to_string(r.pa) + std::to_string(r.qa) + "/c" +
                            std::to_string(r.pb) + std::to_string(r.qb);
  fv.push("re(" + label + ")", v.real(), flagged);
  fv.push("im(" + label + ")", v.imag(), flagged);
}

FeatureVector complex_set(const ComplexMomentSet& cm, bool normalized, int order,
                          const std::vector<Ratio>& ratios, const char* what) {
  require_order(cm.max_order(), order, what);
  if (normalized) require_normalized(cm(0, 0).real(), what);
  FeatureVector fv;
  for (int p = normalized ? 1 : 0; 2 * p <= order; ++p) {
    fv.push("c" + std::to_string(p) + std::to_string(p), cm(p, p).real());
  }
  for (const auto& r : ratios) push_ratio(fv, cm, r);
  return fv;
}

}  // namespace

FeatureVector rmbmi4(const ComplexMomentSet& cm, bool similarity_normalized) {
  return complex_set(cm, similarity_normalized, 4, {{1, 0, 2, 1}, {2, 0, 3, 1}}, "rmbmi4");
}

FeatureVector rmbmi6(const ComplexMomentSet& cm, bool similarity_normalized) {
  return complex_set(cm, similarity_normalized, 6,
                     {{1, 0, 2, 1},
                      {2, 0, 3, 1},
                      {1, 0, 3, 2},
                      {3, 0, 4, 1},
                      {2, 0, 4, 2},
                      {4, 0, 5, 1}},
                     "rmbmi6");
}

FeatureVector rmbmi_geometric(const GeometricMomentSet& gm, bool similarity_normalized) {
  require_order(gm.max_order(), 4, "rmbmi_geometric");
  if (similarity_normalized) require_normalized(gm(0, 0), "rmbmi_geometric");
  const auto m = [&](int p, int q) { return gm(p, q); };

  const double m00 = m(0, 0);
  const double c11 = m(2, 0) + m(0, 2);
  const double c22 = m(4, 0) + 2.0 * m(2, 2) + m(0, 4);

  // c21 = a + ib, c10 = m10 + i m01
  const double a = m(3, 0) + m(1, 2);
  const double b = m(2, 1) + m(0, 3);
  const double d3 = a * a + b * b;
  const double floor3 = denominator_floor(m00, c11, 3);
  const bool flag3 = !(d3 > floor3 * floor3);

  // c31 = u + iv, c20 = s + it
  const double u = m(4, 0) - m(0, 4);
  const double v = 2.0 * (m(3, 1) + m(1, 3));
  const double s = m(2, 0) - m(0, 2);
  const double t = 2.0 * m(1, 1);
  const double d5 = u * u + v * v;
  const double floor4 = denominator_floor(m00, c11, 4);
  const bool flag5 = !(d5 > floor4 * floor4);

  FeatureVector fv;
  if (!similarity_normalized) fv.push("RMBMI0", m00);
  fv.push("RMBMI1", c11);
  fv.push("RMBMI2", c22);
  fv.push("RMBMI3", flag3 ? 0.0 : (m(1, 0) * a + m(0, 1) * b) / d3, flag3);
  fv.push("RMBMI4", flag3 ? 0.0 : (m(0, 1) * a - m(1, 0) * b) / d3, flag3);
  fv.push("RMBMI5", flag5 ? 0.0 : (s * u + t * v) / d5, flag5);
  fv.push("RMBMI6", flag5 ? 0.0 : (t * u - s * v) / d5, flag5);
  return fv;
}

FeatureVector hu_moments(const GeometricMomentSet& gm_normalized) {
  require_order(gm_normalized.max_order(), 3, "hu_moments");
  require_normalized(gm_normalized(0, 0), "hu_moments");
  const auto n = [&](int p, int q) { return gm_normalized(p, q); };
  const double n20 = n(2, 0), n02 = n(0, 2), n11 = n(1, 1);
  const double n30 = n(3, 0), n03 = n(0, 3), n21 = n(2, 1), n12 = n(1, 2);
  const double sa = n30 + n12;
  const double sb = n21 + n03;
  const double da = n30 - 3.0 * n12;
  const double db = 3.0 * n21 - n03;

  FeatureVector fv;
  fv.push("h1", n20 + n02);
  fv.push("h2", (n20 - n02) * (n20 - n02) + 4.0 * n11 * n11);
  fv.push("h3", da * da + db * db);
  fv.push("h4", sa * sa + sb * sb);
  fv.push("h5", da * sa * (sa * sa - 3.0 * sb * sb) + db * sb * (3.0 * sa * sa - sb * sb));
  fv.push("h6", (n20 - n02) * (sa * sa - sb * sb) + 4.0 * n11 * sa * sb);
  fv.push("h7", db * sa * (sa * sa - 3.0 * sb * sb) - da * sb * (3.0 * sa * sa - sb * sb));
  return fv;
}

FeatureVector hm5(const FeatureVector& hu) {
  return select_features(hu, {"h2", "h3", "h4", "h5", "h6"});
}

FeatureVector lmbmi(const FeatureVector& hu) {
  return select_features(hu, {"h2", "h3", "h5", "h7"});
}

std::string to_string(FeatureFamily family) {
  switch (family) {
    case FeatureFamily::rmbmi4: return "rmbmi4";
    case FeatureFamily::rmbmi6: return "rmbmi6";
    case FeatureFamily::geometric: return "geometric";
    case FeatureFamily::hu7: return "hu7";
    case FeatureFamily::hm5: return "hm5";
    case FeatureFamily::lmbmi: return "lmbmi";
  }
  return "?";
}

FeatureFamily parse_feature_family(const std::string& name) {
  for (const auto f : {FeatureFamily::rmbmi4, FeatureFamily::rmbmi6, FeatureFamily::geometric,
                       FeatureFamily::hu7, FeatureFamily::hm5, FeatureFamily::lmbmi}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown feature set '" + name +
                              "' (expected rmbmi4, rmbmi6, geometric, hu7, hm5 or lmbmi)");
}

int required_order(FeatureFamily family) {
  switch (family) {
    case FeatureFamily::rmbmi6: return 6;
    case FeatureFamily::rmbmi4:
    case FeatureFamily::geometric: return 4;
    default: return 3;
  }
}

FeatureVector extract_features(const GeometricMomentSet& gm, FeatureFamily family,
                               bool similarity_normalized) {
  switch (family) {
    case FeatureFamily::rmbmi4:
    case FeatureFamily::rmbmi6: {
      auto cm = complex_from_geometric(gm);
      if (similarity_normalized) cm = normalize_complex(cm);
      return family == FeatureFamily::rmbmi4 ? rmbmi4(cm, similarity_normalized)
                                             : rmbmi6(cm, similarity_normalized);
    }
    case FeatureFamily::geometric:
      return rmbmi_geometric(similarity_normalized ? normalize_geometric(gm) : gm,
                             similarity_normalized);
    case FeatureFamily::hu7: return hu_moments(normalize_geometric(gm));
    case FeatureFamily::hm5: return hm5(hu_moments(normalize_geometric(gm)));
    case FeatureFamily::lmbmi: return lmbmi(hu_moments(normalize_geometric(gm)));
  }
  throw std::invalid_argument("unknown feature family");
}

std::vector<std::string> feature_names(FeatureFamily family, bool similarity_normalized) {
  // names do not depend on the values; unit mass keeps every path valid
  GeometricMomentSet unit(required_order(family));
  unit(0, 0) = 1.0;
  return extract_features(unit, family, similarity_normalized).names;
}

FeatureVector extract_features(const GrayImage& img, FeatureFamily family,
                               bool similarity_normalized) {
  return extract_features(geometric_moments(img, required_order(family)), family,
                          similarity_normalized);
}

}  // namespace rmbmi

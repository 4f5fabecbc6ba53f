#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "rmbmi/blur.hpp"
#include "rmbmi/invariants.hpp"
#include "rmbmi/synthetic.hpp"

using namespace rmbmi;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

ComplexMomentSet cmoments(const GrayImage& img, bool normalized) {
  auto cm = complex_from_geometric(geometric_moments(img, 6));
  return normalized ? normalize_complex(cm) : cm;
}

}  // namespace

TEST(Invariants, FeatureCounts) {
  EXPECT_EQ(feature_names(FeatureFamily::rmbmi4, false).size(), 7u);
  EXPECT_EQ(feature_names(FeatureFamily::rmbmi4, true).size(), 6u);
  EXPECT_EQ(feature_names(FeatureFamily::rmbmi6, false).size(), 16u);
  EXPECT_EQ(feature_names(FeatureFamily::rmbmi6, true).size(), 15u);
  EXPECT_EQ(feature_names(FeatureFamily::geometric, false).size(), 7u);
  EXPECT_EQ(feature_names(FeatureFamily::geometric, true).size(), 6u);
  EXPECT_EQ(feature_names(FeatureFamily::hu7, true).size(), 7u);
  EXPECT_EQ(feature_names(FeatureFamily::hm5, true),
            (std::vector<std::string>{"h2", "h3", "h4", "h5", "h6"}));
  EXPECT_EQ(feature_names(FeatureFamily::lmbmi, true),
            (std::vector<std::string>{"h2", "h3", "h5", "h7"}));
}

TEST(Invariants, FamilyNamesRoundTrip) {
  for (const auto f : {FeatureFamily::rmbmi4, FeatureFamily::rmbmi6, FeatureFamily::geometric,
                       FeatureFamily::hu7, FeatureFamily::hm5, FeatureFamily::lmbmi}) {
    EXPECT_EQ(parse_feature_family(to_string(f)), f);
  }
  EXPECT_THROW(parse_feature_family("zernike"), std::invalid_argument);
}

TEST(Invariants, FirstInvariantIsFirstHuMoment) {
  const auto img = synthetic_texture(97, 2);
  const auto g = extract_features(img, FeatureFamily::geometric, true);
  const auto h = extract_features(img, FeatureFamily::hu7, true);
  EXPECT_NEAR(g.values[*g.find("RMBMI1")], h.values[*h.find("h1")], 1e-15);
}

TEST(Invariants, GeometricAndComplexFormsAgree) {
  for (const bool normalized : {false, true}) {
    for (const std::uint64_t seed : {1, 2, 3}) {
      const auto img = synthetic_texture(129, seed);
      const auto g = extract_features(img, FeatureFamily::geometric, normalized);
      const auto c = rmbmi4(cmoments(img, normalized), normalized);
      const char* pairs[][2] = {{"RMBMI1", "c11"},         {"RMBMI2", "c22"},
                                {"RMBMI3", "re(c10/c21)"}, {"RMBMI4", "im(c10/c21)"},
                                {"RMBMI5", "re(c20/c31)"}, {"RMBMI6", "im(c20/c31)"}};
      for (const auto& [gn, cn] : pairs) {
        EXPECT_LT(rel(g.values[*g.find(gn)], c.values[*c.find(cn)]), 1e-10) << gn << " " << seed;
      }
      if (!normalized) EXPECT_EQ(g.values[*g.find("RMBMI0")], c.values[*c.find("c00")]);
    }
  }
}

TEST(Invariants, SymmetricImageFlagsRatios) {
  const auto disk = synthetic_disk(129, 129, 40.0, 100.0);
  const auto fv = rmbmi6(cmoments(disk, true), true);
  for (std::size_t i = 0; i < fv.size(); ++i) {
    const auto& name = fv.names[i];
    if (name.find('/') == std::string::npos) {
      EXPECT_FALSE(fv.unreliable[i]) << name;
      continue;
    }
    // the square grid keeps the fourth harmonic, so only c40/c51 survives
    const bool fourth = name.find("c40/c51") != std::string::npos;
    EXPECT_EQ(static_cast<bool>(fv.unreliable[i]), !fourth) << name;
    if (!fourth) EXPECT_EQ(fv.values[i], 0.0);
  }
  EXPECT_TRUE(fv.any_unreliable());
  const auto g = extract_features(disk, FeatureFamily::geometric, true);
  EXPECT_TRUE(g.unreliable[*g.find("RMBMI3")]);
  EXPECT_TRUE(g.unreliable[*g.find("RMBMI5")]);
  EXPECT_FALSE(g.unreliable[*g.find("RMBMI1")]);
}

TEST(Invariants, HuUnchangedByQuarterTurn) {
  const auto img = synthetic_texture(101, 6);
  const auto turned = apply_similarity(img, {pi / 2, 1.0});
  const auto a = extract_features(img, FeatureFamily::hu7, true);
  const auto b = extract_features(turned, FeatureFamily::hu7, true);
  for (std::size_t i = 0; i < a.size(); ++i) {
    // h7 is a pseudo-invariant; a quarter turn keeps its sign
    EXPECT_LT(rel(a.values[i], b.values[i]), 1e-9) << a.names[i];
  }
}

TEST(Invariants, SelectKeepsOrder) {
  const auto fv = extract_features(synthetic_texture(65, 1), FeatureFamily::geometric, true);
  const auto s = select_features(fv, {"RMBMI5", "RMBMI1"});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.names[0], "RMBMI5");
  EXPECT_EQ(s.values[1], fv.values[*fv.find("RMBMI1")]);
  EXPECT_THROW(select_features(fv, {"RMBMI9"}), std::invalid_argument);
}

TEST(Invariants, WrongInputsRejected) {
  const auto img = synthetic_texture(65, 1);
  EXPECT_THROW(rmbmi6(complex_from_geometric(geometric_moments(img, 4)), false),
               std::invalid_argument);
  EXPECT_THROW(rmbmi4(complex_from_geometric(geometric_moments(img, 4)), true),
               std::invalid_argument);
  EXPECT_THROW(hu_moments(geometric_moments(img, 3)), std::invalid_argument);
}

TEST(Invariants, Deterministic) {
  const auto img = synthetic_texture(97, 3);
  EXPECT_EQ(extract_features(img, FeatureFamily::rmbmi6, true),
            extract_features(img, FeatureFamily::rmbmi6, true));
}

TEST(Invariants, BlurInvariance) {
  for (const std::uint64_t seed : {11, 12}) {
    const auto img = synthetic_texture(129, seed);
    const auto ref = rmbmi6(cmoments(img, false), false);
    for (const auto& profile : {profile_ucm(3 * pi / 20, 4.0), profile_uacm(pi / 10, pi / 40, 3.0),
                                profile_rcm(pi / 4, pi / 50, 5.0)}) {
      const auto got = rmbmi6(cmoments(synthesize_blur(img, profile), false), false);
      for (std::size_t i = 0; i < ref.size(); ++i) {
        if (ref.names[i].find('/') == std::string::npos) continue;
        if (ref.unreliable[i] || got.unreliable[i]) continue;
        // the imaginary part of a nearly real ratio has no relative precision of its own
        const std::size_t twin = ref.names[i][0] == 'r' ? i + 1 : i - 1;
        const double mag = std::hypot(ref.values[i], ref.values[twin]);
        EXPECT_LT(std::abs(got.values[i] - ref.values[i]) / mag, 0.03)
            << ref.names[i] << " seed " << seed;
      }
    }
  }
}

TEST(Invariants, SimilarityAndBlurInvariance) {
  const auto img = pad_centered(synthetic_texture(129, 31), 30);
  const auto ref = extract_features(img, FeatureFamily::geometric, true);
  for (const auto& sim : {SimilarityParams{pi / 6, 0.6}, SimilarityParams{7 * pi / 6, 1.4},
                          SimilarityParams{3 * pi / 2, 1.0}}) {
    const auto moved = synthesize_blur(apply_similarity(img, sim), profile_uacm(pi / 5, pi / 100, 3.0));
    const auto got = extract_features(moved, FeatureFamily::geometric, true);
    for (const char* name : {"RMBMI1", "RMBMI2"}) {
      const auto i = *ref.find(name);
      EXPECT_LT(rel(got.values[i], ref.values[i]), 0.05) << name << " " << sim.angle;
    }
    // RMBMI3/4 and RMBMI5/6 are the parts of one complex ratio each
    for (const auto [re, im] : {std::pair{"RMBMI3", "RMBMI4"}, std::pair{"RMBMI5", "RMBMI6"}}) {
      const std::complex<double> a(ref.values[*ref.find(re)], ref.values[*ref.find(im)]);
      const std::complex<double> b(got.values[*got.find(re)], got.values[*got.find(im)]);
      EXPECT_LT(std::abs(a - b) / std::abs(a), 0.05) << re << " " << sim.angle;
    }
  }
}

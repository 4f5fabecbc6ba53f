#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rmbmi/config.hpp"
#include "rmbmi/errors.hpp"

using namespace rmbmi;
using std::numbers::pi;

TEST(ParseAngle, Forms) {
  EXPECT_EQ(parse_angle("0.157"), 0.157);
  EXPECT_EQ(parse_angle(" -2 "), -2.0);
  EXPECT_DOUBLE_EQ(parse_angle("pi"), pi);
  EXPECT_DOUBLE_EQ(parse_angle("-pi/6"), -pi / 6);
  EXPECT_DOUBLE_EQ(parse_angle("3pi/20"), 3 * pi / 20);
  EXPECT_DOUBLE_EQ(parse_angle("3*pi/20"), 3 * pi / 20);
  EXPECT_DOUBLE_EQ(parse_angle("2.5pi"), 2.5 * pi);
  EXPECT_DOUBLE_EQ(parse_angle("1/255"), 1.0 / 255);
  EXPECT_EQ(parse_angle("inf"), std::numeric_limits<double>::infinity());
  EXPECT_EQ(parse_angle("-inf"), -std::numeric_limits<double>::infinity());
  for (const char* bad : {"", "pie", "pi/0", "1/0", "x", "3pi/", "1,5"}) {
    EXPECT_THROW(parse_angle(bad), std::invalid_argument) << bad;
  }
}

TEST(ExperimentConfig, FullExample) {
  const auto cfg = parse_experiment_config(R"(
experiment: classification
seed: 9
corpus: {synthetic: {count: 4, size: 65, seed: 2}}
features:
  - geometric
  - {family: geometric, select: [RMBMI1, RMBMI2]}
  - {family: rmbmi4, normalized: false, label: raw}
models: [ucm, rcm]
grid:
  omega: {start: pi/20, step: pi/20, count: 10}
  alpha: [pi/200]
  exposure: [1, 2, 3]
similarity: {modes: [Y], angle: [pi/6], scale: [0.6, 1.4]}
degradations: 5
noise: {snr_db: [inf, 5], clamp: true}
intensity_scale: 1/255
)");
  EXPECT_EQ(cfg.kind, ExperimentKind::classification);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.corpus.synthetic_count, 4);
  ASSERT_EQ(cfg.features.size(), 3u);
  EXPECT_EQ(cfg.features[1].select.size(), 2u);
  EXPECT_FALSE(cfg.features[2].normalized);
  EXPECT_EQ(cfg.features[2].label, "raw");
  EXPECT_EQ(cfg.models.size(), 2u);
  ASSERT_EQ(cfg.grid.omega.size(), 10u);
  EXPECT_DOUBLE_EQ(cfg.grid.omega.back(), pi / 2);
  EXPECT_FALSE(cfg.without_similarity);
  EXPECT_TRUE(cfg.with_similarity);
  EXPECT_EQ(cfg.degradations, 5);
  EXPECT_TRUE(std::isinf(cfg.snr_db[0]));
  EXPECT_TRUE(cfg.clamp_noise);
  EXPECT_DOUBLE_EQ(cfg.intensity_scale, 1.0 / 255);
}

TEST(ExperimentConfig, ErrorsCarryLineNumbers) {
  try {
    parse_experiment_config("experiment: stability\n"
                            "corpus: {synthetic: {count: 3}}\n"
                            "features: [geometric]\n"
                            "grid: {omega: [pie], exposure: [1]}\n"
                            "bogus: 1\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_TRUE(e.line() == 4 || e.line() == 5) << e.line();
    const std::string what = e.what();
    EXPECT_NE(what.find("line 4"), std::string::npos) << what;
    EXPECT_NE(what.find("line 5"), std::string::npos) << what;
  }
}

TEST(ExperimentConfig, Rejections) {
  const std::string base = "experiment: stability\ncorpus: {synthetic: {count: 3}}\nfeatures: [geometric]\n"
                           "grid: {omega: [0.1], exposure: [1]}\n";
  EXPECT_NO_THROW(parse_experiment_config(base));
  for (const char* extra : {"degradations: 0\n", "models: [spin]\n", "intensity_scale: -1\n",
                            "similarity: {modes: [Y]}\n",
                            "noise: {snr_db: []}\n"}) {
    EXPECT_THROW(parse_experiment_config(base + extra), ConfigError) << extra;
  }
  EXPECT_THROW(parse_experiment_config("experiment: stability\nfeatures: [zernike]\n"
                                       "grid: {omega: [0.1], exposure: [1]}\n"),
               ConfigError);
  EXPECT_THROW(parse_experiment_config("experiment: regression\n" + base.substr(22)), ConfigError);
  EXPECT_THROW(parse_experiment_config(base.substr(22)), ConfigError);
  EXPECT_THROW(parse_experiment_config("grid: [1, 2\n"), ConfigError);
  EXPECT_THROW(load_experiment_config("/nonexistent/config.yaml"), IoError);
}

TEST(Profile, ShortcutsAndSegments) {
  EXPECT_EQ(parse_profile_yaml("ucm: {omega: pi/20, exposure: 1}"), profile_ucm(pi / 20, 1.0));
  EXPECT_EQ(parse_profile_yaml("uacm: {omega: pi/20, alpha: pi/200, exposure: 1}"),
            profile_uacm(pi / 20, pi / 200, 1.0));
  EXPECT_EQ(parse_profile_yaml("rcm: {omega: pi/20, alpha: pi/200, exposure: 2}"),
            profile_rcm(pi / 20, pi / 200, 2.0));
  const auto p = parse_profile_yaml(
      "segments:\n"
      "  - {t_start: 0, t_end: 1, a0: 0, a1: pi/20, a2: 0}\n"
      "  - {t_start: 1, t_end: 3, a0: pi/20, a1: 0, a2: 0.1}\n");
  EXPECT_EQ(p.segments().size(), 2u);
  EXPECT_DOUBLE_EQ(psi_eval(p, 3.0), pi / 20 + 0.4);
  EXPECT_THROW(parse_profile_yaml("segments: [{t_start: 0, t_end: 0}]"), ConfigError);
  EXPECT_THROW(parse_profile_yaml("spin: {omega: 1}"), ConfigError);
}

TEST(Profile, YamlRoundTrip) {
  for (const auto& p : {profile_ucm(0.3, 2.0), profile_uacm(-1.0, 0.25, 4.0),
                        profile_rcm(pi / 7, pi / 300, 3.0)}) {
    EXPECT_EQ(parse_profile_yaml(profile_to_yaml(p)), p);
  }
}

TEST(ExperimentConfig, ShippedConfigsLoad) {
  const std::string dir = RMBMI_CONFIG_DIR;
  const auto stability = load_experiment_config(dir + "/stability_ucm.yaml");
  EXPECT_EQ(stability.kind, ExperimentKind::stability);
  EXPECT_EQ(stability.grid.omega.size() * stability.grid.exposure.size(), 50u);

  const auto similar = load_experiment_config(dir + "/stability_similarity.yaml");
  EXPECT_EQ(similar.models.size(), 3u);
  EXPECT_TRUE(similar.with_similarity);
  EXPECT_FALSE(similar.without_similarity);

  const auto cls = load_experiment_config(dir + "/classification.yaml");
  EXPECT_EQ(cls.kind, ExperimentKind::classification);
  EXPECT_EQ(cls.corpus.synthetic_count, 20);
  EXPECT_EQ(cls.features.size(), 4u);
  EXPECT_EQ(cls.snr_db.size(), 7u);
  EXPECT_TRUE(std::isinf(cls.snr_db.front()));
}

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "rmbmi/config.hpp"
#include "rmbmi/errors.hpp"
#include "rmbmi/experiment.hpp"
#include "rmbmi/image_io.hpp"
#include "rmbmi/synthetic.hpp"

using namespace rmbmi;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.corpus.synthetic_count = 3;
  cfg.corpus.synthetic_size = 65;
  cfg.features = {FeatureSpec{"", FeatureFamily::geometric, true, {}}};
  cfg.grid.omega = {pi / 20, pi / 10};
  cfg.grid.alpha = {pi / 200};
  cfg.grid.exposure = {1.0, 2.0};
  cfg.degradations = 4;
  cfg.seed = 5;
  cfg.threads = 1;
  return cfg;
}

std::string csv(const ResultTable& t) {
  std::ostringstream out;
  write_csv(out, t);
  return out.str();
}

}  // namespace

TEST(Experiment, StillGridGivesNearZeroMre) {
  auto cfg = small_config(ExperimentKind::stability);
  cfg.grid.omega = {0.0};
  cfg.grid.exposure = {1.0, 3.0};
  cfg.models = {MotionModel::ucm, MotionModel::uacm, MotionModel::rcm};
  cfg.grid.alpha = {0.0};
  const auto t = run_stability_experiment(cfg);
  ASSERT_EQ(t.columns, (std::vector<std::string>{"UCM_N", "UACM_N", "RCM_N"}));
  for (const auto& row : t.rows) {
    for (const double v : row.values) EXPECT_LT(v, 0.01) << row.name;
  }
}

TEST(Experiment, TwoClassesWithoutDegradation) {
  auto cfg = small_config(ExperimentKind::classification);
  cfg.corpus.synthetic_count = 2;
  cfg.grid.omega = {0.0};
  cfg.grid.exposure = {1.0};
  cfg.features.push_back(FeatureSpec{"", FeatureFamily::hm5, true, {}});
  const auto t = run_classification_experiment(cfg);
  ASSERT_EQ(t.rows.size(), 2u);
  for (const auto& row : t.rows) EXPECT_EQ(row.values[0], 100.0) << row.name;
}

TEST(Experiment, CsvIndependentOfThreadCount) {
  auto cfg = small_config(ExperimentKind::stability);
  cfg.with_similarity = true;
  cfg.similarity = {{pi / 6, pi}, {0.8, 1.2}};
  cfg.snr_db = {ExperimentConfig::kNoNoise, 10.0};
  const auto one = csv(run_experiment(cfg));
  cfg.threads = 3;
  EXPECT_EQ(csv(run_experiment(cfg)), one);
  cfg.seed = 6;
  EXPECT_NE(csv(run_experiment(cfg)), one);
}

TEST(Experiment, CsvLayout) {
  auto cfg = small_config(ExperimentKind::classification);
  cfg.with_similarity = true;
  cfg.similarity = {{pi / 6}, {1.0}};
  cfg.features = {FeatureSpec{"", FeatureFamily::geometric, true, {"RMBMI1", "RMBMI5"}}};
  const auto text = csv(run_experiment(cfg));
  std::istringstream in(text);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "features,snr_db,UCM_N,UCM_Y");
  EXPECT_EQ(row.rfind("geometric[RMBMI1+RMBMI5],inf,", 0), 0u) << row;
}

TEST(Plan, GridOrderAndSampling) {
  auto cfg = small_config(ExperimentKind::stability);
  // 2 omegas x 2 exposures = 4 cells, exactly the count: used in order
  auto plan = plan_degradations(cfg, MotionModel::ucm, false, 0);
  ASSERT_EQ(plan.size(), 4u);
  EXPECT_EQ(plan[0].omega, pi / 20);
  EXPECT_EQ(plan[1].exposure, 2.0);
  EXPECT_EQ(plan[2].omega, pi / 10);

  // more cells than wanted: distinct cells, same for every image
  cfg.grid.alpha = {0.1, 0.2, 0.3};
  const auto a = plan_degradations(cfg, MotionModel::uacm, false, 0);
  const auto b = plan_degradations(cfg, MotionModel::uacm, false, 7);
  std::set<std::tuple<double, double, double>> seen;
  for (std::size_t j = 0; j < a.size(); ++j) {
    seen.insert({a[j].omega, a[j].alpha, a[j].exposure});
    EXPECT_EQ(a[j].alpha, b[j].alpha);
  }
  EXPECT_EQ(seen.size(), a.size());

  // fewer cells than wanted: cycled
  cfg.degradations = 6;
  plan = plan_degradations(cfg, MotionModel::ucm, false, 0);
  EXPECT_EQ(plan[4].omega, plan[0].omega);
  EXPECT_EQ(plan[4].exposure, plan[0].exposure);
}

TEST(Plan, SimilarityDrawnFromGrid) {
  auto cfg = small_config(ExperimentKind::stability);
  cfg.similarity = {{pi / 6, pi / 3}, {0.6, 1.4}};
  for (const auto& d : plan_degradations(cfg, MotionModel::rcm, true, 2)) {
    EXPECT_TRUE(d.similarity);
    EXPECT_TRUE(d.transform.angle == pi / 6 || d.transform.angle == pi / 3);
    EXPECT_TRUE(d.transform.scale == 0.6 || d.transform.scale == 1.4);
  }
}

TEST(Degrade, ScaledCanvasKeepsContent) {
  const auto img = synthetic_texture(65, 3);
  Degradation d;
  d.omega = 0.0;
  d.similarity = true;
  d.transform = {0.5, 1.4};
  const auto out = degrade(img, d);
  EXPECT_GT(out.width(), img.width());
  EXPECT_LT(support_radius(out), 0.5 * (out.width() - 1));
  d.transform.scale = 0.6;
  EXPECT_LT(degrade(img, d).width(), img.width());
}

TEST(Corpus, DirectoryLoading) {
  const fs::path dir = fs::temp_directory_path() / "rmbmi_corpus_test";
  fs::remove_all(dir);
  write_corpus(dir, synthetic_corpus(2, 33, 1));
  std::ofstream(dir / "notes.txt") << "ignored";
  CorpusSpec spec;
  spec.directory = dir;
  spec.resize = 17;
  const auto images = load_corpus(spec);
  ASSERT_EQ(images.size(), 2u);
  EXPECT_EQ(images[0].name, "img_00");
  EXPECT_EQ(images[1].image.width(), 17);
  fs::remove_all(dir);
  EXPECT_THROW(load_corpus(spec), IoError);
}

TEST(Corpus, NeedsTwoImages) {
  auto cfg = small_config(ExperimentKind::stability);
  cfg.corpus.synthetic_count = 1;
  EXPECT_THROW(run_experiment(cfg), DegenerateInput);
}

TEST(FormatDouble, RoundTrips) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(100.0), "100");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  const double x = 2.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(SyntheticTexture, FullFrameCoversTheUsableDisk) {
  const double c = 128.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto full = synthetic_texture(257, seed, TextureLayout::full_frame);
    EXPECT_GT(support_radius(full), 0.9 * c) << seed;
    EXPECT_LE(support_radius(full), 0.94 * c + 1.0) << seed;
    const auto obj = synthetic_texture(257, seed);
    EXPECT_LE(support_radius(obj), 0.94 * c + 1.0) << seed;
    EXPECT_NE(full.pixels()[128 * 257 + 128], obj.pixels()[128 * 257 + 128]) << seed;
  }
  const auto a = synthetic_texture(65, 9, TextureLayout::full_frame);
  const auto b = synthetic_texture(65, 9, TextureLayout::full_frame);
  EXPECT_TRUE(std::equal(a.pixels().begin(), a.pixels().end(), b.pixels().begin()));
}

TEST(SyntheticTexture, LayoutNames) {
  for (const auto l : {TextureLayout::object, TextureLayout::full_frame}) {
    EXPECT_EQ(parse_texture_layout(to_string(l)), l);
  }
  EXPECT_THROW(parse_texture_layout("centered"), std::invalid_argument);
  const auto cfg = parse_experiment_config(
      "experiment: stability\ncorpus: {synthetic: {count: 2, layout: full_frame}}\n"
      "features: [geometric]\ngrid: {omega: [0.1], exposure: [1]}\n");
  EXPECT_EQ(cfg.corpus.synthetic_layout, TextureLayout::full_frame);
  EXPECT_THROW(parse_experiment_config(
                   "experiment: stability\ncorpus: {synthetic: {count: 2, layout: square}}\n"
                   "features: [geometric]\ngrid: {omega: [0.1], exposure: [1]}\n"),
               ConfigError);
}

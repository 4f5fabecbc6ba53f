#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "rmbmi/blur.hpp"
#include "rmbmi/image.hpp"
#include "rmbmi/invariants.hpp"
#include "rmbmi/synthetic.hpp"

namespace rmbmi {

enum class ExperimentKind { stability, classification };

std::string to_string(ExperimentKind kind);

/// Where the images come from: a directory of PGM/PNG files (sorted by
/// file name, optionally resized to resize x resize) or the built-in
/// synthetic textures.
struct CorpusSpec {
  std::filesystem::path directory;
  int resize = 0;
  int synthetic_count = 0;
  int synthetic_size = 257;
  std::uint64_t synthetic_seed = 1;
  TextureLayout synthetic_layout = TextureLayout::object;

  bool synthetic() const noexcept { return directory.empty(); }
};

struct NamedImage {
  std::string name;
  GrayImage image;
};

std::vector<NamedImage> load_corpus(const CorpusSpec& spec);

/// One feature family as evaluated by an experiment; `select` keeps a subset
/// of the family's features in the listed order.
struct FeatureSpec {
  std::string label;
  FeatureFamily family = FeatureFamily::geometric;
  bool normalized = true;
  std::vector<std::string> select;
};

/// `label`, or when empty one built from the family, "_raw" for
/// unnormalized features and the selection, e.g. "geometric[RMBMI1+RMBMI2]".
std::string display_label(const FeatureSpec& spec);

FeatureVector extract(const FeatureSpec& spec, const GeometricMomentSet& gm);

/// Blur parameter grid shared by the motion models; `alpha` is ignored for UCM.
struct BlurGrid {
  std::vector<double> omega;
  std::vector<double> alpha{0.0};
  std::vector<double> exposure;
};

struct SimilarityGrid {
  std::vector<double> angle;
  std::vector<double> scale;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::stability;
  CorpusSpec corpus;
  std::vector<FeatureSpec> features;
  std::vector<MotionModel> models{MotionModel::ucm};
  BlurGrid grid;
  bool without_similarity = true;  ///< the "N" columns
  bool with_similarity = false;    ///< the "Y" columns
  SimilarityGrid similarity;
  int degradations = 50;
  std::vector<double> snr_db{kNoNoise};
  /// Clamp noisy images to [0, 255]. When off, moments are taken of the
  /// unclipped signal plus noise.
  bool clamp_noise = false;
  /// Intensities are multiplied by this before features are computed. The
  /// chi-square distance is not scale invariant, and on a [0, 1] scale the
  /// normalized invariants have comparable magnitudes.
  double intensity_scale = 1.0 / 255.0;
  std::uint64_t seed = 0;
  int n_steps = 0;
  int threads = 0;  ///< 0 selects default_thread_count()
  std::filesystem::path output;

  static constexpr double kNoNoise = std::numeric_limits<double>::infinity();
};

/// One degraded version of an image: similarity transform (when enabled),
/// then rotational blur, then noise.
struct Degradation {
  MotionModel model = MotionModel::ucm;
  double omega = 0.0;
  double alpha = 0.0;
  double exposure = 1.0;
  bool similarity = false;
  SimilarityParams transform;
};

/// The `degradations` versions used for one image under one model and
/// column. Blur cells come from the grid in order when it has exactly that
/// many cells, as a seeded sample (shared by all images) when it has more,
/// and cyclically when it has fewer. Similarity transforms are drawn the same
/// way from the angle x scale grid, per image.
std::vector<Degradation> plan_degradations(const ExperimentConfig& config, MotionModel model,
                                           bool with_similarity, std::size_t image_index);

/// Applies the similarity transform (if any), then the blur. With a
/// transform the canvas is resized by the same scale about its center
/// (cropped or padded), enlarged further if the content would not fit.
GrayImage degrade(const GrayImage& img, const Degradation& d, int n_steps = 0);

/// Rows are features (stability) or feature sets (classification) per SNR;
/// columns are model x {N, Y}. Values are MRE or accuracy, both in percent.
struct ResultTable {
  ExperimentKind kind = ExperimentKind::stability;
  std::vector<std::string> columns;
  struct Row {
    std::string name;
    double snr_db = ExperimentConfig::kNoNoise;
    std::vector<double> values;
    /// Stability only: degraded versions left out per column because a
    /// feature was flagged unreliable.
    std::vector<std::size_t> excluded;
  };
  std::vector<Row> rows;
  std::string corpus;
  std::string degradation;
};

struct RunOptions {
  std::function<void(std::size_t done, std::size_t total)> progress;
};

ResultTable run_stability_experiment(const ExperimentConfig& config,
                                     const RunOptions& options = {});
ResultTable run_classification_experiment(const ExperimentConfig& config,
                                          const RunOptions& options = {});
ResultTable run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Shortest representation that reads back to the same double; "inf" and
/// "-inf" for infinities.
std::string format_double(double value);

/// Header `feature` (stability) or `features` (classification), `snr_db`,
/// then one column per model x {N, Y}.
void write_csv(std::ostream& out, const ResultTable& table);

}  // namespace rmbmi

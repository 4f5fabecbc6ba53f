#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "rmbmi/errors.hpp"
#include "rmbmi/version.hpp"

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

std::string joined(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rmbmi::cli;

  CLI::App app{"Rotational motion blur synthesis and moment invariants"};
  app.set_version_flag("--version", rmbmi::kVersion);
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: RMBMI_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  BlurArgs blur;
  auto* blur_cmd = app.add_subcommand("blur", "Apply rotational motion blur");
  blur_cmd->add_option("input", blur.input, "Input PGM or PNG")->required();
  blur_cmd->add_option("-o,--output", blur.output, "Output PGM")->required();
  auto* ucm = blur_cmd->add_option("--ucm", blur.ucm, "omega,T (uniform circular motion)");
  auto* uacm = blur_cmd->add_option("--uacm", blur.uacm, "omega,alpha,T (accelerated)");
  auto* rcm = blur_cmd->add_option("--rcm", blur.rcm, "omega,alpha,T (reciprocating)");
  auto* prof = blur_cmd->add_option("--profile", blur.profile, "Motion profile YAML");
  auto* motion = blur_cmd->add_option_group("motion");
  for (auto* o : {ucm, uacm, rcm, prof}) motion->add_option(o);
  motion->require_option(1);
  blur_cmd->add_option("--steps", blur.steps, "Time samples (0 = automatic)")
      ->check(CLI::NonNegativeNumber);

  TransformArgs transform;
  auto* transform_cmd = app.add_subcommand("transform", "Rotate and scale about the center");
  transform_cmd->add_option("input", transform.input)->required();
  transform_cmd->add_option("-o,--output", transform.output)->required();
  transform_cmd->add_option("--angle", transform.angle, "Radians or pi literal, e.g. pi/6");
  transform_cmd->add_option("--scale", transform.scale);
  transform_cmd->add_flag("--fit", transform.fit, "Pad so the transformed content stays in frame");

  NoiseArgs noise;
  auto* noise_cmd = app.add_subcommand("noise", "Add Gaussian white noise at a given SNR");
  noise_cmd->add_option("input", noise.input)->required();
  noise_cmd->add_option("-o,--output", noise.output)->required();
  noise_cmd->add_option("--snr", noise.snr_db, "SNR in dB (inf disables)")->required();
  noise_cmd->add_option("--seed", noise.seed);

  MomentsArgs moments;
  auto* moments_cmd = app.add_subcommand("moments", "Geometric and complex moments as CSV");
  moments_cmd->add_option("input", moments.input)->required();
  moments_cmd->add_option("-o,--output", moments.output, "CSV file (default: stdout)");
  moments_cmd->add_option("--order", moments.order)->check(CLI::Range(0, 32));
  moments_cmd->add_flag("--normalized", moments.normalized, "Scale-normalize the moments");

  FeaturesArgs features;
  auto* features_cmd = app.add_subcommand("features", "Invariant features as CSV");
  features_cmd->alias("invariants");
  features_cmd->add_option("inputs", features.inputs)->required();
  features_cmd->add_option("-o,--output", features.output, "CSV file (default: stdout)");
  features_cmd->add_option("--set", features.set, "rmbmi4, rmbmi6, geometric, hu7, hm5 or lmbmi");
  features_cmd->add_flag("--normalized", features.normalized, "Similarity-normalized invariants");
  features_cmd->add_option("--select", features.select, "Keep only these features")
      ->delimiter(',');
  features_cmd->add_option("--intensity-scale", features.intensity_scale,
                           "Multiply intensities by this first, e.g. 1/255");

  ExperimentArgs experiment;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a stability or classification experiment");
  experiment_cmd->add_option("config", experiment.config, "Experiment YAML")->required();
  experiment_cmd->add_option("-o,--output", experiment.output, "CSV file (overrides the config)");
  experiment_cmd->add_option("--seed", experiment.seed, "Overrides the config seed");
  experiment_cmd->add_flag("-q,--quiet", experiment.quiet, "No progress output");

  CorpusArgs corpus;
  auto* corpus_cmd = app.add_subcommand("corpus", "Write the synthetic test corpus as PGM files");
  corpus_cmd->add_option("-o,--output", corpus.output, "Directory")->required();
  corpus_cmd->add_option("--count", corpus.count);
  corpus_cmd->add_option("--size", corpus.size);
  corpus_cmd->add_option("--seed", corpus.seed);
  corpus_cmd->add_option("--layout", corpus.layout, "object or full_frame")
      ->check(CLI::IsMember({"object", "full_frame"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*blur_cmd) {
      blur.threads = threads;
      return cmd_blur(blur);
    }
    if (*transform_cmd) return cmd_transform(transform);
    if (*noise_cmd) return cmd_noise(noise);
    if (*moments_cmd) return cmd_moments(moments);
    if (*features_cmd) return cmd_features(features);
    if (*experiment_cmd) {
      experiment.has_seed = experiment_cmd->count("--seed") > 0;
      experiment.threads = threads;
      experiment.command_line = joined(argc, argv);
      return cmd_experiment(experiment);
    }
    if (*corpus_cmd) return cmd_corpus(corpus);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const rmbmi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsageError;
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmbmi::cli {

/// Bad flags or flag values; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BlurArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  std::string ucm, uacm, rcm;
  std::filesystem::path profile;
  int steps = 0;
  int threads = 0;
};

struct TransformArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  std::string angle = "0";
  double scale = 1.0;
  bool fit = false;
};

struct NoiseArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  std::string snr_db;
  std::uint64_t seed = 0;
};

struct MomentsArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  int order = 6;
  bool normalized = false;
};

struct FeaturesArgs {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path output;
  std::string set = "geometric";
  bool normalized = false;
  std::vector<std::string> select;
  std::string intensity_scale = "1";
};

struct ExperimentArgs {
  std::filesystem::path config;
  std::filesystem::path output;
  bool has_seed = false;
  std::uint64_t seed = 0;
  int threads = 0;
  bool quiet = false;
  std::string command_line;
};

struct CorpusArgs {
  std::filesystem::path output;
  int count = 10;
  int size = 257;
  std::uint64_t seed = 1;
  std::string layout = "object";
};

int cmd_blur(const BlurArgs& args);
int cmd_transform(const TransformArgs& args);
int cmd_noise(const NoiseArgs& args);
int cmd_moments(const MomentsArgs& args);
int cmd_features(const FeaturesArgs& args);
int cmd_experiment(const ExperimentArgs& args);
int cmd_corpus(const CorpusArgs& args);

}  // namespace rmbmi::cli

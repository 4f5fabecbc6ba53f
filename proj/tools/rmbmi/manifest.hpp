#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmbmi/experiment.hpp"

namespace rmbmi::cli {

std::string sha256_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct ManifestInputs {
  std::string command_line;
  std::filesystem::path config_path;
  std::vector<std::filesystem::path> corpus_files;
  std::filesystem::path output;
};

nlohmann::json make_manifest(const ExperimentConfig& cfg, const ManifestInputs& in);

}  // namespace rmbmi::cli

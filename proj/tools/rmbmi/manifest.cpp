#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <random>

#include "rmbmi/errors.hpp"
#include "rmbmi/version.hpp"

namespace rmbmi::cli {

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);  // JSON has no infinities
}

nlohmann::json numbers(const std::vector<double>& v) {
  auto out = nlohmann::json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 initialisation failed");
  }
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::string hex;
  static constexpr char digits[] = "0123456789abcdef";
  for (unsigned int i = 0; i < len; ++i) {
    hex += digits[md[i] >> 4];
    hex += digits[md[i] & 15];
  }
  return hex;
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::random_device rd;
  auto tmp = path;
  char suffix[24];
  std::snprintf(suffix, sizeof suffix, ".tmp-%08x", static_cast<unsigned>(rd()));
  tmp += suffix;
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw IoError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move output into place: " + path.string() + ": " + ec.message());
  }
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["experiment"] = to_string(cfg.kind);
  j["seed"] = cfg.seed;
  if (cfg.corpus.synthetic()) {
    j["corpus"]["synthetic"] = {{"count", cfg.corpus.synthetic_count},
                                {"size", cfg.corpus.synthetic_size},
                                {"seed", cfg.corpus.synthetic_seed},
                                {"layout", to_string(cfg.corpus.synthetic_layout)}};
  } else {
    j["corpus"]["directory"] = cfg.corpus.directory.string();
    if (cfg.corpus.resize > 0) j["corpus"]["resize"] = cfg.corpus.resize;
  }
  for (const auto& f : cfg.features) {
    j["features"].push_back({{"label", f.label},
                             {"family", to_string(f.family)},
                             {"normalized", f.normalized},
                             {"select", f.select}});
  }
  for (const auto m : cfg.models) j["models"].push_back(to_string(m));
  j["grid"] = {{"omega", numbers(cfg.grid.omega)},
               {"alpha", numbers(cfg.grid.alpha)},
               {"exposure", numbers(cfg.grid.exposure)}};
  auto modes = nlohmann::json::array();
  if (cfg.without_similarity) modes.push_back("N");
  if (cfg.with_similarity) modes.push_back("Y");
  j["similarity"] = {{"modes", modes},
                     {"angle", numbers(cfg.similarity.angle)},
                     {"scale", numbers(cfg.similarity.scale)}};
  j["degradations"] = cfg.degradations;
  j["noise"] = {{"snr_db", numbers(cfg.snr_db)}, {"clamp", cfg.clamp_noise}};
  j["intensity_scale"] = cfg.intensity_scale;
  j["blur"]["n_steps"] = cfg.n_steps;
  j["threads"] = cfg.threads;
  j["output"] = cfg.output.string();
  return j;
}

nlohmann::json make_manifest(const ExperimentConfig& cfg, const ManifestInputs& in) {
  nlohmann::json m;
  m["tool"] = "rmbmi";
  m["version"] = kVersion;
  m["command"] = in.command_line;
  m["timestamp"] = utc_timestamp();
  m["seed"] = cfg.seed;
  m["config"] = config_to_json(cfg);
  auto inputs = nlohmann::json::array();
  if (!in.config_path.empty()) {
    inputs.push_back({{"path", in.config_path.string()}, {"sha256", sha256_file(in.config_path)}});
  }
  for (const auto& f : in.corpus_files) {
    inputs.push_back({{"path", f.string()}, {"sha256", sha256_file(f)}});
  }
  m["inputs"] = inputs;
  m["output"] = {{"path", in.output.string()}, {"sha256", sha256_file(in.output)}};
  return m;
}

}  // namespace rmbmi::cli

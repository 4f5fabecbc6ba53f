#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "manifest.hpp"
#include "rmbmi/blur.hpp"
#include "rmbmi/config.hpp"
#include "rmbmi/errors.hpp"
#include "rmbmi/experiment.hpp"
#include "rmbmi/image.hpp"
#include "rmbmi/image_io.hpp"
#include "rmbmi/invariants.hpp"
#include "rmbmi/moments.hpp"
#include "rmbmi/parallel.hpp"
#include "rmbmi/synthetic.hpp"

namespace rmbmi::cli {

namespace {

double parse_value(const std::string& text, const std::string& flag) {
  try {
    return parse_angle(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// "a,b,c" with each entry a number or pi literal.
std::vector<double> parse_tuple(const std::string& text, std::size_t n, const std::string& flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_value(item, flag));
  if (out.size() != n) {
    throw UsageError(flag + " expects " + std::to_string(n) + " comma-separated values, got '" +
                     text + "'");
  }
  return out;
}

MotionProfile profile_from(const BlurArgs& a) {
  try {
    if (!a.ucm.empty()) {
      const auto v = parse_tuple(a.ucm, 2, "--ucm");
      return profile_ucm(v[0], v[1]);
    }
    if (!a.uacm.empty()) {
      const auto v = parse_tuple(a.uacm, 3, "--uacm");
      return profile_uacm(v[0], v[1], v[2]);
    }
    if (!a.rcm.empty()) {
      const auto v = parse_tuple(a.rcm, 3, "--rcm");
      return profile_rcm(v[0], v[1], v[2]);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ifstream in(a.profile);
  if (!in) throw IoError("cannot read profile " + a.profile.string());
  std::stringstream text;
  text << in.rdbuf();
  return parse_profile_yaml(text.str());
}

// Writes to the file, or to stdout when no path is given.
void emit(const std::filesystem::path& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_atomically(path, text);
  }
}

int thread_count(int requested) { return requested > 0 ? requested : default_thread_count(); }

}  // namespace

int cmd_blur(const BlurArgs& a) {
  const auto profile = profile_from(a);
  const GrayImage img = load_image(a.input);
  const GrayImage out = synthesize_blur(img, profile, BlurOptions{a.steps, thread_count(a.threads)});
  save_pgm(a.output, out);
  std::cout << "delta,re,im,abs\n";
  for (int delta = 1; delta <= 4; ++delta) {
    const auto c = blur_constant(profile, delta);
    std::cout << delta << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << ','
              << format_double(std::abs(c)) << '\n';
  }
  return 0;
}

int cmd_transform(const TransformArgs& a) {
  if (!(a.scale > 0.0)) throw UsageError("--scale must be positive");
  const SimilarityParams params{parse_value(a.angle, "--angle"), a.scale};
  GrayImage img = load_image(a.input);
  if (a.fit) img = pad_centered(img, margin_for_scale(img, a.scale));
  save_pgm(a.output, apply_similarity(img, params));
  return 0;
}

int cmd_noise(const NoiseArgs& a) {
  const double snr = parse_value(a.snr_db, "--snr");
  if (std::isnan(snr) || snr == -std::numeric_limits<double>::infinity()) {
    throw UsageError("--snr must be finite or inf");
  }
  save_pgm(a.output, add_gaussian_noise(load_image(a.input), snr, a.seed));
  return 0;
}

int cmd_moments(const MomentsArgs& a) {
  if (a.order < 0) throw UsageError("--order must be >= 0");
  auto gm = geometric_moments(load_image(a.input), a.order);
  if (a.normalized) gm = normalize_geometric(gm);
  const auto cm = complex_from_geometric(gm);
  std::ostringstream out;
  out << "p,q,m_pq,re_c_pq,im_c_pq\n";
  for (int n = 0; n <= a.order; ++n) {
    for (int q = 0; q <= n; ++q) {
      const int p = n - q;
      out << p << ',' << q << ',' << format_double(gm(p, q)) << ','
          << format_double(cm(p, q).real()) << ',' << format_double(cm(p, q).imag()) << '\n';
    }
  }
  emit(a.output, out.str());
  return 0;
}

int cmd_features(const FeaturesArgs& a) {
  FeatureSpec spec;
  try {
    spec.family = parse_feature_family(a.set);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.normalized = a.normalized;
  spec.select = a.select;
  const double scale = parse_value(a.intensity_scale, "--intensity-scale");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw UsageError("--intensity-scale must be positive");
  const int order = required_order(spec.family);

  std::ostringstream out;
  bool header = false;
  for (const auto& path : a.inputs) {
    auto gm = geometric_moments(load_image(path), order);
    for (int n = 0; n <= order; ++n) {
      for (int q = 0; q <= n; ++q) gm(n - q, q) *= scale;
    }
    FeatureVector fv;
    try {
      fv = extract(spec, gm);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (!header) {
      out << "image";
      for (const auto& n : fv.names) out << ',' << n;
      out << '\n';
      header = true;
    }
    out << path.filename().string();
    for (const double v : fv.values) out << ',' << format_double(v);
    out << '\n';
  }
  emit(a.output, out.str());
  return 0;
}

int cmd_experiment(const ExperimentArgs& a) {
  ExperimentConfig cfg = load_experiment_config(a.config);
  if (a.has_seed) cfg.seed = a.seed;
  if (a.threads > 0) cfg.threads = a.threads;
  if (!a.output.empty()) cfg.output = a.output;
  if (cfg.output.empty()) {
    cfg.output = a.config;
    cfg.output.replace_extension(".csv");
  }

  RunOptions options;
  if (!a.quiet) {
    options.progress = [last = -1](std::size_t done, std::size_t total) mutable {
      const int pct = static_cast<int>(100 * done / total);
      if (pct != last) {
        last = pct;
        std::cerr << "\r" << pct << "% ("
                  << done << "/" << total << ")" << std::flush;
        if (done == total) std::cerr << '\n';
      }
    };
  }
  const ResultTable table = run_experiment(cfg, options);

  std::ostringstream csv;
  write_csv(csv, table);
  write_atomically(cfg.output, csv.str());

  ManifestInputs in;
  in.command_line = a.command_line;
  in.config_path = a.config;
  if (!cfg.corpus.synthetic()) {
    for (const auto& entry : std::filesystem::directory_iterator(cfg.corpus.directory)) {
      auto ext = entry.path().extension().string();
      std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
      if (entry.is_regular_file() && (ext == ".pgm" || ext == ".png")) {
        in.corpus_files.push_back(entry.path());
      }
    }
    std::sort(in.corpus_files.begin(), in.corpus_files.end());
  }
  in.output = cfg.output;
  auto manifest_path = cfg.output;
  manifest_path += ".manifest.json";
  write_atomically(manifest_path, make_manifest(cfg, in).dump(2) + "\n");

  if (!a.quiet) std::cerr << "wrote " << cfg.output.string() << '\n';
  return 0;
}

int cmd_corpus(const CorpusArgs& a) {
  if (a.count < 1) throw UsageError("--count must be >= 1");
  if (a.size < 3) throw UsageError("--size must be >= 3");
  TextureLayout layout;
  try {
    layout = parse_texture_layout(a.layout);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_corpus(a.output, synthetic_corpus(a.count, a.size, a.seed, layout));
  return 0;
}

}  // namespace rmbmi::cli

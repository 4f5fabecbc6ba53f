#include "rmbmi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "rmbmi/errors.hpp"
#include "rmbmi/image_io.hpp"
#include "rmbmi/metrics.hpp"
#include "rmbmi/moments.hpp"
#include "rmbmi/parallel.hpp"
#include "rmbmi/random.hpp"
#include "rmbmi/synthetic.hpp"

namespace rmbmi {

namespace {

// Stream tags for derive_seed, so each kind of draw gets its own sequence.
constexpr std::uint64_t kTagBlur = 1;
constexpr std::uint64_t kTagSimilarity = 2;
constexpr std::uint64_t kTagNoise = 3;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

// Unbiased draw in [0, bound) that does not depend on the standard
// library's distribution implementations.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

// `wanted` indices into [0, available): all in order, a seeded sample
// without replacement, or a cycle when there are not enough.
std::vector<std::size_t> pick(std::size_t available, std::size_t wanted, std::uint64_t seed) {
  std::vector<std::size_t> idx(available);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (available > wanted) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < wanted; ++i) {
      std::swap(idx[i], idx[i + bounded(rng, available - i)]);
    }
    idx.resize(wanted);
  } else if (available < wanted) {
    std::vector<std::size_t> cycled(wanted);
    for (std::size_t i = 0; i < wanted; ++i) cycled[i] = i % available;
    idx = std::move(cycled);
  }
  return idx;
}

struct Column {
  MotionModel model;
  bool similarity;
  std::string name;
};

std::vector<Column> columns_of(const ExperimentConfig& cfg) {
  std::vector<Column> out;
  for (const auto m : cfg.models) {
    if (cfg.without_similarity) out.push_back({m, false, upper(to_string(m)) + "_N"});
    if (cfg.with_similarity) out.push_back({m, true, upper(to_string(m)) + "_Y"});
  }
  return out;
}

GeometricMomentSet scaled(GeometricMomentSet gm, double k) {
  for (int n = 0; n <= gm.max_order(); ++n) {
    for (int q = 0; q <= n; ++q) gm(n - q, q) *= k;
  }
  return gm;
}

std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

std::string describe_corpus(const CorpusSpec& c, std::size_t count) {
  std::ostringstream s;
  if (c.synthetic()) {
    s << "synthetic count=" << c.synthetic_count << " size=" << c.synthetic_size
      << " seed=" << c.synthetic_seed << " layout=" << to_string(c.synthetic_layout);
  } else {
    s << c.directory.string() << " images=" << count;
    if (c.resize > 0) s << " resize=" << c.resize;
  }
  return s.str();
}

std::string describe_degradation(const ExperimentConfig& cfg) {
  std::ostringstream s;
  s << "models=";
  for (std::size_t i = 0; i < cfg.models.size(); ++i) s << (i ? "," : "") << to_string(cfg.models[i]);
  s << " omega=" << join_numbers(cfg.grid.omega) << " alpha=" << join_numbers(cfg.grid.alpha)
    << " exposure=" << join_numbers(cfg.grid.exposure) << " degradations=" << cfg.degradations;
  if (cfg.with_similarity) {
    s << " angle=" << join_numbers(cfg.similarity.angle)
      << " scale=" << join_numbers(cfg.similarity.scale);
  }
  s << " snr_db=" << join_numbers(cfg.snr_db) << " clamp=" << (cfg.clamp_noise ? "yes" : "no")
    << " intensity_scale=" << format_double(cfg.intensity_scale) << " seed=" << cfg.seed
    << " n_steps=" << (cfg.n_steps > 0 ? std::to_string(cfg.n_steps) : "auto");
  return s.str();
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.features.empty()) throw ConfigError("no feature sets configured");
  if (cfg.models.empty()) throw ConfigError("no motion models configured");
  if (cfg.grid.omega.empty() || cfg.grid.exposure.empty()) {
    throw ConfigError("blur grid needs omega and exposure values");
  }
  if (cfg.grid.alpha.empty()) throw ConfigError("blur grid alpha list is empty");
  if (!cfg.without_similarity && !cfg.with_similarity) {
    throw ConfigError("neither N nor Y columns requested");
  }
  if (cfg.with_similarity && (cfg.similarity.angle.empty() || cfg.similarity.scale.empty())) {
    throw ConfigError("similarity grid needs angle and scale values");
  }
  if (cfg.degradations < 1) throw ConfigError("degradations must be at least 1");
  if (cfg.snr_db.empty()) throw ConfigError("snr list is empty");
  if (!(cfg.intensity_scale > 0.0) || !std::isfinite(cfg.intensity_scale)) {
    throw ConfigError("intensity_scale must be positive");
  }
}

// Features of every degraded image: [cell][snr][spec], cells ordered by
// image, column, degradation.
struct Evaluation {
  std::vector<NamedImage> corpus;
  std::vector<Column> columns;
  std::vector<std::vector<FeatureVector>> reference;  // [image][spec]
  std::vector<FeatureVector> degraded;
  std::size_t per_image = 0;

  const FeatureVector& at(std::size_t image, std::size_t column, std::size_t j, std::size_t snr,
                          std::size_t spec, std::size_t n_snr, std::size_t n_spec) const {
    const std::size_t cell = (image * columns.size() + column) * per_image + j;
    return degraded[(cell * n_snr + snr) * n_spec + spec];
  }
};

Evaluation evaluate(const ExperimentConfig& cfg, const RunOptions& options) {
  validate(cfg);
  Evaluation ev;
  ev.corpus = load_corpus(cfg.corpus);
  if (ev.corpus.size() < 2) throw DegenerateInput("the corpus needs at least two images");
  ev.columns = columns_of(cfg);
  ev.per_image = static_cast<std::size_t>(cfg.degradations);

  int order = 0;
  for (const auto& spec : cfg.features) order = std::max(order, required_order(spec.family));

  ev.reference.resize(ev.corpus.size());
  for (std::size_t i = 0; i < ev.corpus.size(); ++i) {
    const auto gm = scaled(geometric_moments(ev.corpus[i].image, order), cfg.intensity_scale);
    for (const auto& spec : cfg.features) ev.reference[i].push_back(extract(spec, gm));
  }

  std::vector<std::vector<Degradation>> plans;  // [image * columns + column]
  for (std::size_t i = 0; i < ev.corpus.size(); ++i) {
    for (const auto& col : ev.columns) {
      plans.push_back(plan_degradations(cfg, col.model, col.similarity, i));
    }
  }

  const std::size_t n_snr = cfg.snr_db.size();
  const std::size_t n_spec = cfg.features.size();
  const std::size_t cells = plans.size() * ev.per_image;
  ev.degraded.resize(cells * n_snr * n_spec);

  const int threads = cfg.threads > 0 ? cfg.threads : default_thread_count();
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  parallel_for(cells, threads, [&](std::size_t cell) {
    const std::size_t plan = cell / ev.per_image;
    const std::size_t j = cell % ev.per_image;
    const std::size_t image = plan / ev.columns.size();
    const auto& d = plans[plan][j];
    const GrayImage blurred = degrade(ev.corpus[image].image, d, cfg.n_steps);
    for (std::size_t s = 0; s < n_snr; ++s) {
      const double snr = cfg.snr_db[s];
      const auto raw = [&] {
        if (std::isinf(snr)) return geometric_moments(blurred, order);
        const auto seed = derive_seed(cfg.seed, {kTagNoise, static_cast<std::uint64_t>(d.model),
                                                 d.similarity ? 1u : 0u, image, j, s});
        if (cfg.clamp_noise) return geometric_moments(add_gaussian_noise(blurred, snr, seed), order);
        auto field = gaussian_noise_field(blurred, snr, seed);
        const auto px = blurred.pixels();
        for (std::size_t k = 0; k < field.size(); ++k) field[k] += px[k];
        return geometric_moments(blurred.width(), blurred.height(), field, order,
                                 image_center(blurred));
      }();
      const auto gm = scaled(raw, cfg.intensity_scale);
      for (std::size_t f = 0; f < n_spec; ++f) {
        ev.degraded[(cell * n_snr + s) * n_spec + f] = extract(cfg.features[f], gm);
      }
    }
    const std::size_t now = ++done;
    if (options.progress) {
      std::lock_guard lock(progress_mutex);
      options.progress(now, cells);
    }
  });
  return ev;
}

ResultTable empty_table(const ExperimentConfig& cfg, const Evaluation& ev) {
  ResultTable table;
  table.kind = cfg.kind;
  for (const auto& c : ev.columns) table.columns.push_back(c.name);
  table.corpus = describe_corpus(cfg.corpus, ev.corpus.size());
  table.degradation = describe_degradation(cfg);
  return table;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  return kind == ExperimentKind::stability ? "stability" : "classification";
}

std::vector<NamedImage> load_corpus(const CorpusSpec& spec) {
  std::vector<NamedImage> out;
  if (spec.synthetic()) {
    const auto images = synthetic_corpus(spec.synthetic_count, spec.synthetic_size,
                                         spec.synthetic_seed, spec.synthetic_layout);
    for (std::size_t i = 0; i < images.size(); ++i) {
      std::string name = "syn_" + std::string(i < 10 ? "0" : "") + std::to_string(i);
      out.push_back({std::move(name), images[i]});
    }
  } else {
    if (!std::filesystem::is_directory(spec.directory)) {
      throw IoError("corpus directory not found: " + spec.directory.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(spec.directory)) {
      if (!entry.is_regular_file()) continue;
      const auto ext = lower(entry.path().extension().string());
      if (ext == ".pgm" || ext == ".png") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::set<std::string> names;
    for (const auto& f : files) {
      GrayImage img = load_image(f);
      if (spec.resize > 0 && (img.width() != spec.resize || img.height() != spec.resize)) {
        img = resize_bilinear(img, spec.resize, spec.resize);
      }
      std::string name = f.stem().string();
      if (!names.insert(name).second) name = f.filename().string();
      out.push_back({std::move(name), std::move(img)});
    }
  }
  if (out.empty()) throw IoError("corpus is empty");
  return out;
}

std::string display_label(const FeatureSpec& spec) {
  if (!spec.label.empty()) return spec.label;
  std::string label = to_string(spec.family);
  if (!spec.normalized) label += "_raw";
  if (!spec.select.empty()) {
    label += "[";
    for (std::size_t i = 0; i < spec.select.size(); ++i) label += (i ? "+" : "") + spec.select[i];
    label += "]";
  }
  return label;
}

FeatureVector extract(const FeatureSpec& spec, const GeometricMomentSet& gm) {
  auto fv = extract_features(gm, spec.family, spec.normalized);
  return spec.select.empty() ? fv : select_features(fv, spec.select);
}

std::vector<Degradation> plan_degradations(const ExperimentConfig& config, MotionModel model,
                                           bool with_similarity, std::size_t image_index) {
  const auto& g = config.grid;
  const std::vector<double> no_alpha{0.0};
  const auto& alphas = model == MotionModel::ucm ? no_alpha : g.alpha;
  const std::size_t n_blur = g.omega.size() * alphas.size() * g.exposure.size();
  const auto wanted = static_cast<std::size_t>(config.degradations);
  const auto blur_cells =
      pick(n_blur, wanted, derive_seed(config.seed, {kTagBlur, static_cast<std::uint64_t>(model)}));

  std::vector<std::size_t> sim_cells;
  const std::size_t n_scale = config.similarity.scale.size();
  if (with_similarity) {
    const std::size_t n_sim = config.similarity.angle.size() * n_scale;
    if (n_sim == 0) throw ConfigError("similarity grid is empty");
    sim_cells = pick(n_sim, wanted,
                     derive_seed(config.seed, {kTagSimilarity, static_cast<std::uint64_t>(model),
                                               image_index}));
  }

  std::vector<Degradation> out(wanted);
  for (std::size_t j = 0; j < wanted; ++j) {
    // omega-major, then alpha, then exposure
    std::size_t c = blur_cells[j];
    const std::size_t e = c % g.exposure.size();
    c /= g.exposure.size();
    const std::size_t a = c % alphas.size();
    const std::size_t o = c / alphas.size();
    auto& d = out[j];
    d.model = model;
    d.omega = g.omega[o];
    d.alpha = alphas[a];
    d.exposure = g.exposure[e];
    d.similarity = with_similarity;
    if (with_similarity) {
      const std::size_t sc = sim_cells[j];
      d.transform = {config.similarity.angle[sc / n_scale], config.similarity.scale[sc % n_scale]};
    }
  }
  return out;
}

GrayImage degrade(const GrayImage& img, const Degradation& d, int n_steps) {
  const auto profile = make_profile(d.model, d.omega, d.alpha, d.exposure);
  const BlurOptions blur{n_steps, 1};
  if (!d.similarity) return synthesize_blur(img, profile, blur);

  // The canvas is scaled along with the content, as when resizing a whole
  // picture, but never so tight that the rotated content leaves the frame.
  const double scale = d.transform.scale;
  const double half = 0.5 * (std::min(img.width(), img.height()) - 1);
  const double wanted = std::max(scale * half, scale * support_radius(img) + 2.0);
  const int margin = static_cast<int>(std::ceil(wanted - half));
  GrayImage moved = margin > 0 ? apply_similarity(pad_centered(img, margin), d.transform)
                               : crop_centered(apply_similarity(img, d.transform), -margin);
  return synthesize_blur(moved, profile, blur);
}

ResultTable run_stability_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const auto ev = evaluate(config, options);
  auto table = empty_table(config, ev);
  table.kind = ExperimentKind::stability;
  const std::size_t n_snr = config.snr_db.size();
  const std::size_t n_spec = config.features.size();

  for (std::size_t s = 0; s < n_snr; ++s) {
    for (std::size_t f = 0; f < n_spec; ++f) {
      const auto& names = ev.reference.front()[f].names;
      std::vector<MreAccumulator> acc(ev.columns.size(), MreAccumulator(names));
      for (std::size_t c = 0; c < ev.columns.size(); ++c) {
        for (std::size_t i = 0; i < ev.corpus.size(); ++i) {
          std::vector<FeatureVector> list;
          list.reserve(ev.per_image);
          for (std::size_t j = 0; j < ev.per_image; ++j) {
            list.push_back(ev.at(i, c, j, s, f, n_snr, n_spec));
          }
          acc[c].add_image(ev.reference[i][f], list);
        }
      }
      for (std::size_t k = 0; k < names.size(); ++k) {
        ResultTable::Row row;
        row.name = n_spec > 1 ? display_label(config.features[f]) + ":" + names[k] : names[k];
        row.snr_db = config.snr_db[s];
        for (const auto& a : acc) {
          row.values.push_back(a.percent()[k]);
          row.excluded.push_back(a.excluded()[k]);
        }
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

ResultTable run_classification_experiment(const ExperimentConfig& config,
                                          const RunOptions& options) {
  const auto ev = evaluate(config, options);
  auto table = empty_table(config, ev);
  table.kind = ExperimentKind::classification;
  const std::size_t n_snr = config.snr_db.size();
  const std::size_t n_spec = config.features.size();

  for (std::size_t s = 0; s < n_snr; ++s) {
    for (std::size_t f = 0; f < n_spec; ++f) {
      const auto& names = ev.reference.front()[f].names;
      LabeledFeatureSet train(names);
      for (std::size_t i = 0; i < ev.corpus.size(); ++i) {
        train.add(ev.corpus[i].name, ev.reference[i][f]);
      }
      ResultTable::Row row;
      row.name = display_label(config.features[f]);
      row.snr_db = config.snr_db[s];
      for (std::size_t c = 0; c < ev.columns.size(); ++c) {
        LabeledFeatureSet test(names);
        for (std::size_t i = 0; i < ev.corpus.size(); ++i) {
          for (std::size_t j = 0; j < ev.per_image; ++j) {
            test.add(ev.corpus[i].name, ev.at(i, c, j, s, f, n_snr, n_spec));
          }
        }
        row.values.push_back(100.0 * nn_classify(train, test).accuracy);
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

ResultTable run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  return config.kind == ExperimentKind::stability
             ? run_stability_experiment(config, options)
             : run_classification_experiment(config, options);
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const ResultTable& table) {
  out << (table.kind == ExperimentKind::stability ? "feature" : "features") << ",snr_db";
  for (const auto& c : table.columns) out << ',' << c;
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.name << ',' << format_double(row.snr_db);
    for (const double v : row.values) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace rmbmi

#include "rmbmi/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rmbmi/errors.hpp"

namespace rmbmi {

namespace {

bool parse_decimal(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

double parse_angle(const std::string& text) {
  const std::string s = trim(text);
  const auto fail = [&]() -> double {
    throw std::invalid_argument("not a number or pi multiple: '" + text + "'");
  };
  if (s.empty()) fail();

  double value = 0.0;
  if (parse_decimal(s, value)) return value;

  std::string_view rest = s;
  double sign = 1.0;
  if (rest.front() == '-' || rest.front() == '+') {
    sign = rest.front() == '-' ? -1.0 : 1.0;
    rest.remove_prefix(1);
  }
  if (rest == "inf" || rest == "infinity") return sign * std::numeric_limits<double>::infinity();

  const auto pi_at = rest.find("pi");
  if (pi_at == std::string_view::npos) {
    // plain fraction such as 1/255
    const auto slash = rest.find('/');
    double num = 0.0;
    double den = 0.0;
    if (slash == std::string_view::npos || !parse_decimal(rest.substr(0, slash), num) ||
        !parse_decimal(rest.substr(slash + 1), den) || den == 0.0) {
      fail();
    }
    return sign * num / den;
  }
  std::string_view coef = rest.substr(0, pi_at);
  std::string_view tail = rest.substr(pi_at + 2);
  if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
  double factor = 1.0;
  if (!coef.empty() && (!parse_decimal(coef, factor) || coef.front() == '-')) fail();
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') fail();
    tail.remove_prefix(1);
    if (!parse_decimal(tail, divisor) || divisor == 0.0) fail();
  }
  return sign * factor * std::numbers::pi / divisor;
}

namespace {

int line_of(const YAML::Node& node) {
  if (!node.IsDefined()) return 0;
  const auto mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

// Collects every problem so a config can be fixed in one pass.
class Issues {
 public:
  void add(int line, std::string message) { list_.emplace_back(line, std::move(message)); }
  void add(const YAML::Node& node, std::string message) { add(line_of(node), std::move(message)); }
  bool empty() const { return list_.empty(); }

  // ConfigError prefixes the first entry's line itself.
  [[noreturn]] void raise() const {
    std::ostringstream msg;
    msg << list_.front().second;
    for (std::size_t i = 1; i < list_.size(); ++i) {
      msg << "\n";
      if (list_[i].first > 0) msg << "line " << list_[i].first << ": ";
      msg << list_[i].second;
    }
    throw ConfigError(msg.str(), list_.front().first);
  }
  void raise_if_any() const {
    if (!empty()) raise();
  }

 private:
  std::vector<std::pair<int, std::string>> list_;
};

void check_keys(const YAML::Node& map, const std::set<std::string>& allowed, const char* where,
                Issues& issues) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      issues.add(kv.first, std::string("unknown key '") + key + "' in " + where);
    }
  }
}

bool as_number(const YAML::Node& node, double& out, const std::string& what, Issues& issues) {
  if (!node.IsScalar()) {
    issues.add(node, what + " must be a number");
    return false;
  }
  try {
    out = parse_angle(node.Scalar());
    return true;
  } catch (const std::invalid_argument&) {
    issues.add(node, what + ": cannot parse '" + node.Scalar() + "' as a number");
    return false;
  }
}

bool as_integer(const YAML::Node& node, long long& out, const std::string& what,
                Issues& issues) {
  if (node.IsScalar()) {
    const auto& s = node.Scalar();
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size()) return true;
  }
  issues.add(node, what + " must be an integer");
  return false;
}

bool as_bool(const YAML::Node& node, bool& out, const std::string& what, Issues& issues) {
  try {
    out = node.as<bool>();
    return true;
  } catch (const YAML::Exception&) {
    issues.add(node, what + " must be true or false");
    return false;
  }
}

// A list of numbers: [a, b, ...], a single value, or {start, step, count}.
std::vector<double> number_list(const YAML::Node& node, const std::string& what,
                                Issues& issues) {
  std::vector<double> out;
  if (node.IsSequence()) {
    for (const auto& item : node) {
      double v = 0.0;
      if (as_number(item, v, what, issues)) out.push_back(v);
    }
  } else if (node.IsMap()) {
    check_keys(node, {"start", "step", "count"}, what.c_str(), issues);
    double start = 0.0, step = 0.0;
    long long count = 0;
    bool ok = true;
    if (!node["start"] || !node["step"] || !node["count"]) {
      issues.add(node, what + " range needs start, step and count");
      return out;
    }
    ok &= as_number(node["start"], start, what + ".start", issues);
    ok &= as_number(node["step"], step, what + ".step", issues);
    ok &= as_integer(node["count"], count, what + ".count", issues);
    if (ok && count < 1) {
      issues.add(node["count"], what + ".count must be at least 1");
      ok = false;
    }
    if (ok) {
      for (long long k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
    }
  } else if (node.IsScalar()) {
    double v = 0.0;
    if (as_number(node, v, what, issues)) out.push_back(v);
  } else {
    issues.add(node, what + " must be a number, a list or {start, step, count}");
  }
  return out;
}

void parse_corpus(const YAML::Node& node, const std::filesystem::path& base_dir,
                  CorpusSpec& corpus, Issues& issues) {
  if (!node.IsMap()) {
    issues.add(node, "corpus must be a map with 'directory' or 'synthetic'");
    return;
  }
  check_keys(node, {"directory", "resize", "synthetic"}, "corpus", issues);
  const bool has_dir = static_cast<bool>(node["directory"]);
  const bool has_syn = static_cast<bool>(node["synthetic"]);
  if (has_dir == has_syn) {
    issues.add(node, "corpus needs exactly one of 'directory' and 'synthetic'");
    return;
  }
  if (has_dir) {
    std::filesystem::path dir = node["directory"].as<std::string>();
    corpus.directory = dir.is_relative() && !base_dir.empty() ? base_dir / dir : dir;
  } else {
    const auto syn = node["synthetic"];
    if (!syn.IsMap()) {
      issues.add(syn, "corpus.synthetic must be a map {count, size, seed}");
      return;
    }
    check_keys(syn, {"count", "size", "seed", "layout"}, "corpus.synthetic", issues);
    long long v = 0;
    if (!syn["count"]) {
      issues.add(syn, "corpus.synthetic.count is required");
    } else if (as_integer(syn["count"], v, "corpus.synthetic.count", issues)) {
      if (v < 1) issues.add(syn["count"], "corpus.synthetic.count must be at least 1");
      corpus.synthetic_count = static_cast<int>(v);
    }
    if (syn["size"] && as_integer(syn["size"], v, "corpus.synthetic.size", issues)) {
      if (v < 9) issues.add(syn["size"], "corpus.synthetic.size must be at least 9");
      corpus.synthetic_size = static_cast<int>(v);
    }
    if (syn["seed"] && as_integer(syn["seed"], v, "corpus.synthetic.seed", issues)) {
      corpus.synthetic_seed = static_cast<std::uint64_t>(v);
    }
    if (syn["layout"]) {
      try {
        corpus.synthetic_layout = parse_texture_layout(syn["layout"].as<std::string>());
      } catch (const std::exception&) {
        issues.add(syn["layout"], "corpus.synthetic.layout must be 'object' or 'full_frame'");
      }
    }
  }
  if (node["resize"]) {
    long long v = 0;
    if (as_integer(node["resize"], v, "corpus.resize", issues)) {
      if (v < 0) issues.add(node["resize"], "corpus.resize must be non-negative");
      corpus.resize = static_cast<int>(v);
    }
  }
}

void parse_features(const YAML::Node& node, std::vector<FeatureSpec>& out, Issues& issues) {
  if (!node.IsSequence() || node.size() == 0) {
    issues.add(node, "features must be a non-empty list");
    return;
  }
  std::set<std::string> labels;
  for (const auto& item : node) {
    FeatureSpec spec;
    if (item.IsScalar()) {
      try {
        spec.family = parse_feature_family(item.Scalar());
      } catch (const std::invalid_argument& e) {
        issues.add(item, e.what());
        continue;
      }
    } else if (item.IsMap()) {
      check_keys(item, {"family", "normalized", "select", "label"}, "features", issues);
      if (!item["family"]) {
        issues.add(item, "feature entry needs 'family'");
        continue;
      }
      try {
        spec.family = parse_feature_family(item["family"].as<std::string>());
      } catch (const std::exception& e) {
        issues.add(item["family"], e.what());
        continue;
      }
      if (item["normalized"]) as_bool(item["normalized"], spec.normalized, "normalized", issues);
      if (item["label"]) spec.label = item["label"].as<std::string>();
      if (item["select"]) {
        const auto sel = item["select"];
        if (!sel.IsSequence() || sel.size() == 0) {
          issues.add(sel, "select must be a non-empty list of feature names");
        } else {
          const auto names = feature_names(spec.family, spec.normalized);
          for (const auto& n : sel) {
            const auto name = n.as<std::string>();
            if (std::find(names.begin(), names.end(), name) == names.end()) {
              issues.add(n, "feature '" + name + "' is not produced by " +
                                to_string(spec.family) +
                                (spec.normalized ? " (normalized)" : " (raw)"));
            }
            spec.select.push_back(name);
          }
        }
      }
    } else {
      issues.add(item, "feature entry must be a family name or a map");
      continue;
    }
    if (spec.label.empty()) spec.label = display_label(spec);
    if (!labels.insert(spec.label).second) {
      issues.add(item, "duplicate feature label '" + spec.label + "'");
    }
    if (spec.label.find_first_of(",\"\n") != std::string::npos) {
      issues.add(item, "feature label must not contain commas, quotes or newlines");
    }
    out.push_back(std::move(spec));
  }
}

}  // namespace

namespace {

ExperimentConfig parse_experiment_yaml(const std::string& yaml_text,
                                       const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
  if (!root.IsMap()) throw ConfigError("config must be a YAML map", line_of(root));

  Issues issues;
  ExperimentConfig cfg;
  check_keys(root,
             {"experiment", "seed", "corpus", "features", "models", "grid", "similarity",
              "degradations", "noise", "intensity_scale", "blur", "threads", "output"},
             "config", issues);

  if (!root["experiment"]) {
    issues.add(1, "missing 'experiment' (stability or classification)");
  } else {
    const auto kind = root["experiment"].as<std::string>();
    if (kind == "stability") {
      cfg.kind = ExperimentKind::stability;
    } else if (kind == "classification") {
      cfg.kind = ExperimentKind::classification;
    } else {
      issues.add(root["experiment"], "experiment must be 'stability' or 'classification'");
    }
  }

  if (root["seed"]) {
    const auto& s = root["seed"].Scalar();
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      issues.add(root["seed"], "seed must be a non-negative integer");
    }
    cfg.seed = seed;
  }

  if (!root["corpus"]) {
    issues.add(1, "missing 'corpus'");
  } else {
    parse_corpus(root["corpus"], base_dir, cfg.corpus, issues);
  }

  if (!root["features"]) {
    issues.add(1, "missing 'features'");
  } else {
    parse_features(root["features"], cfg.features, issues);
  }

  if (root["models"]) {
    const auto models = root["models"];
    cfg.models.clear();
    if (!models.IsSequence() || models.size() == 0) {
      issues.add(models, "models must be a non-empty list of ucm, uacm, rcm");
    } else {
      for (const auto& m : models) {
        try {
          const auto model = parse_motion_model(m.as<std::string>());
          if (std::find(cfg.models.begin(), cfg.models.end(), model) != cfg.models.end()) {
            issues.add(m, "model listed twice");
          }
          cfg.models.push_back(model);
        } catch (const std::exception& e) {
          issues.add(m, e.what());
        }
      }
    }
  }

  if (!root["grid"]) {
    issues.add(1, "missing 'grid' (omega, exposure and, for uacm/rcm, alpha)");
  } else {
    const auto grid = root["grid"];
    check_keys(grid, {"omega", "alpha", "exposure"}, "grid", issues);
    if (!grid["omega"]) issues.add(grid, "grid.omega is required");
    if (!grid["exposure"]) issues.add(grid, "grid.exposure is required");
    if (grid["omega"]) cfg.grid.omega = number_list(grid["omega"], "grid.omega", issues);
    if (grid["exposure"]) {
      cfg.grid.exposure = number_list(grid["exposure"], "grid.exposure", issues);
      for (const double t : cfg.grid.exposure) {
        if (!(t > 0.0) || !std::isfinite(t)) {
          issues.add(grid["exposure"], "exposure times must be positive and finite");
          break;
        }
      }
    }
    if (grid["alpha"]) cfg.grid.alpha = number_list(grid["alpha"], "grid.alpha", issues);
    for (const auto* list : {&cfg.grid.omega, &cfg.grid.alpha}) {
      for (const double v : *list) {
        if (!std::isfinite(v)) {
          issues.add(grid, "grid values must be finite");
          break;
        }
      }
    }
  }

  if (root["similarity"]) {
    const auto sim = root["similarity"];
    check_keys(sim, {"modes", "angle", "scale"}, "similarity", issues);
    cfg.without_similarity = true;
    cfg.with_similarity = true;
    if (sim["modes"]) {
      cfg.without_similarity = false;
      cfg.with_similarity = false;
      for (const auto& m : sim["modes"]) {
        const auto mode = m.as<std::string>();
        if (mode == "N") {
          cfg.without_similarity = true;
        } else if (mode == "Y") {
          cfg.with_similarity = true;
        } else {
          issues.add(m, "similarity mode must be N or Y");
        }
      }
      if (!cfg.without_similarity && !cfg.with_similarity) {
        issues.add(sim["modes"], "similarity.modes must list N, Y or both");
      }
    }
    if (cfg.with_similarity) {
      if (!sim["angle"] || !sim["scale"]) {
        issues.add(sim, "similarity needs 'angle' and 'scale' lists for mode Y");
      } else {
        cfg.similarity.angle = number_list(sim["angle"], "similarity.angle", issues);
        cfg.similarity.scale = number_list(sim["scale"], "similarity.scale", issues);
        for (const double s : cfg.similarity.scale) {
          if (!(s > 0.0) || !std::isfinite(s)) {
            issues.add(sim["scale"], "similarity scales must be positive");
            break;
          }
        }
      }
    }
  }

  if (root["degradations"]) {
    long long v = 0;
    if (as_integer(root["degradations"], v, "degradations", issues)) {
      if (v < 1) issues.add(root["degradations"], "degradations must be at least 1");
      cfg.degradations = static_cast<int>(v);
    }
  }

  if (root["noise"]) {
    const auto noise = root["noise"];
    check_keys(noise, {"snr_db", "clamp"}, "noise", issues);
    if (noise["clamp"]) as_bool(noise["clamp"], cfg.clamp_noise, "noise.clamp", issues);
    if (noise["snr_db"]) {
      cfg.snr_db = number_list(noise["snr_db"], "noise.snr_db", issues);
      if (cfg.snr_db.empty()) issues.add(noise["snr_db"], "noise.snr_db must not be empty");
      for (const double v : cfg.snr_db) {
        if (std::isnan(v) || v == -std::numeric_limits<double>::infinity()) {
          issues.add(noise["snr_db"], "snr_db values must be finite or inf");
          break;
        }
      }
    }
  }

  if (root["blur"]) {
    const auto blur = root["blur"];
    check_keys(blur, {"n_steps"}, "blur", issues);
    long long v = 0;
    if (blur["n_steps"] && as_integer(blur["n_steps"], v, "blur.n_steps", issues)) {
      if (v < 0) issues.add(blur["n_steps"], "blur.n_steps must be >= 0 (0 = automatic)");
      cfg.n_steps = static_cast<int>(v);
    }
  }

  if (root["intensity_scale"]) {
    double v = 0.0;
    if (as_number(root["intensity_scale"], v, "intensity_scale", issues)) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        issues.add(root["intensity_scale"], "intensity_scale must be positive");
      }
      cfg.intensity_scale = v;
    }
  }

  if (root["threads"]) {
    long long v = 0;
    if (as_integer(root["threads"], v, "threads", issues)) {
      if (v < 0) issues.add(root["threads"], "threads must be >= 0 (0 = automatic)");
      cfg.threads = static_cast<int>(v);
    }
  }

  if (root["output"]) {
    std::filesystem::path out = root["output"].as<std::string>();
    cfg.output = out.is_relative() && !base_dir.empty() ? base_dir / out : out;
  }

  issues.raise_if_any();
  return cfg;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& yaml_text,
                                         const std::filesystem::path& base_dir) {
  try {
    return parse_experiment_yaml(yaml_text, base_dir);
  } catch (const YAML::Exception& e) {
    // type mismatches such as a map where a string was expected
    throw ConfigError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str(), path.parent_path());
}

namespace {

MotionProfile parse_profile(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
  if (!root.IsMap() || root.size() != 1) {
    throw ConfigError("profile must have exactly one of 'segments', 'ucm', 'uacm', 'rcm'",
                      line_of(root));
  }
  Issues issues;
  const auto key = root.begin()->first.as<std::string>();
  const auto body = root.begin()->second;

  const auto field = [&](const YAML::Node& map, const char* name, double fallback,
                         bool required) {
    double v = fallback;
    if (!map[name]) {
      if (required) issues.add(map, std::string("missing '") + name + "'");
    } else {
      as_number(map[name], v, name, issues);
    }
    return v;
  };

  if (key == "segments") {
    if (!body.IsSequence() || body.size() == 0) {
      throw ConfigError("segments must be a non-empty list", line_of(body));
    }
    std::vector<MotionSegment> segments;
    for (const auto& seg : body) {
      if (!seg.IsMap()) {
        issues.add(seg, "segment must be a map");
        continue;
      }
      check_keys(seg, {"t_start", "t_end", "a0", "a1", "a2"}, "segment", issues);
      segments.push_back({field(seg, "t_start", 0.0, true), field(seg, "t_end", 0.0, true),
                          field(seg, "a0", 0.0, false), field(seg, "a1", 0.0, false),
                          field(seg, "a2", 0.0, false)});
    }
    issues.raise_if_any();
    try {
      return MotionProfile(std::move(segments));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what(), line_of(body));
    }
  }

  MotionModel model{};
  try {
    model = parse_motion_model(key);
  } catch (const std::invalid_argument&) {
    throw ConfigError("unknown profile kind '" + key + "'", line_of(root));
  }
  if (!body.IsMap()) throw ConfigError(key + " must be a map", line_of(body));
  const bool accel = model != MotionModel::ucm;
  if (accel) {
    check_keys(body, {"omega", "alpha", "exposure"}, key.c_str(), issues);
  } else {
    check_keys(body, {"omega", "exposure"}, key.c_str(), issues);
  }
  const double omega = field(body, "omega", 0.0, true);
  const double alpha = accel ? field(body, "alpha", 0.0, true) : 0.0;
  const double exposure = field(body, "exposure", 0.0, true);
  issues.raise_if_any();
  try {
    return make_profile(model, omega, alpha, exposure);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), line_of(body));
  }
}

}  // namespace

MotionProfile parse_profile_yaml(const std::string& yaml_text) {
  try {
    return parse_profile(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
}

std::string profile_to_yaml(const MotionProfile& profile) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap << YAML::Key << "segments" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : profile.segments()) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "t_start" << YAML::Value << s.t_start;
    out << YAML::Key << "t_end" << YAML::Value << s.t_end;
    out << YAML::Key << "a0" << YAML::Value << s.a0;
    out << YAML::Key << "a1" << YAML::Value << s.a1;
    out << YAML::Key << "a2" << YAML::Value << s.a2;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace rmbmi

#include "rmbmi/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "compensated.hpp"
#include "rmbmi/errors.hpp"

namespace rmbmi {

namespace {

void require_same_names(const FeatureVector& a, const FeatureVector& b) {
  if (a.names != b.names) throw std::invalid_argument("feature vectors have different names");
}

bool usable(const FeatureVector& v, std::size_t k) { return !v.unreliable[k]; }

}  // namespace

double relative_error(double a, double b) {
  const double den = std::abs(a) + std::abs(b);
  return den == 0.0 ? 0.0 : std::abs(a - b) / den;
}

MreResult mre(const FeatureVector& reference, const std::vector<FeatureVector>& degraded) {
  if (degraded.empty()) throw std::invalid_argument("mre needs at least one degraded vector");
  const std::size_t n = reference.size();
  std::vector<detail::CompensatedSum> sum(n);
  std::vector<std::size_t> used(n, 0);
  MreResult out{std::vector<double>(n, 0.0), std::vector<std::size_t>(n, 0)};
  for (const auto& d : degraded) {
    require_same_names(reference, d);
    for (std::size_t k = 0; k < n; ++k) {
      if (!usable(reference, k) || !usable(d, k)) {
        ++out.excluded[k];
        continue;
      }
      sum[k].add(relative_error(reference.values[k], d.values[k]));
      ++used[k];
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (used[k] > 0) out.percent[k] = 100.0 * sum[k].value() / static_cast<double>(used[k]);
  }
  return out;
}

MreAccumulator::MreAccumulator(std::vector<std::string> names)
    : names_(std::move(names)),
      sum_(names_.size(), 0.0),
      images_(names_.size(), 0),
      excluded_(names_.size(), 0) {}

void MreAccumulator::add_image(const FeatureVector& reference,
                               const std::vector<FeatureVector>& degraded) {
  if (reference.names != names_) throw std::invalid_argument("feature names do not match");
  const auto r = mre(reference, degraded);
  for (std::size_t k = 0; k < names_.size(); ++k) {
    excluded_[k] += r.excluded[k];
    if (r.excluded[k] < degraded.size()) {
      sum_[k] += r.percent[k];
      ++images_[k];
    }
  }
  pairs_ += degraded.size();
}

std::vector<double> MreAccumulator::percent() const {
  std::vector<double> out(names_.size(), 0.0);
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (images_[k] > 0) out[k] = sum_[k] / static_cast<double>(images_[k]);
  }
  return out;
}

double chi_square_distance(const FeatureVector& x, const FeatureVector& y) {
  require_same_names(x, y);
  double d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!usable(x, k) || !usable(y, k)) continue;
    const double den = std::abs(x.values[k]) + std::abs(y.values[k]);
    if (den == 0.0) continue;
    const double diff = x.values[k] - y.values[k];
    d += diff * diff / den;
  }
  return d;
}

double relative_l1_distance(const FeatureVector& x, const FeatureVector& y) {
  require_same_names(x, y);
  double d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!usable(x, k) || !usable(y, k)) continue;
    d += relative_error(x.values[k], y.values[k]);
  }
  return d;
}

LabeledFeatureSet::LabeledFeatureSet(std::vector<std::string> feature_names)
    : names_(std::move(feature_names)) {}

void LabeledFeatureSet::add(std::string label, FeatureVector features) {
  if (features.names != names_) {
    throw std::invalid_argument("feature vector names differ from the set's names");
  }
  labels_.push_back(std::move(label));
  features_.push_back(std::move(features));
}

Classification nn_classify(const LabeledFeatureSet& train, const LabeledFeatureSet& test,
                           const DistanceFn& distance) {
  if (train.empty() || test.empty()) throw DegenerateInput("nn_classify needs non-empty sets");
  if (train.feature_names() != test.feature_names()) {
    throw std::invalid_argument("training and test features differ");
  }
  Classification out;
  out.predicted.reserve(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < train.size(); ++j) {
      const double d = distance(test.features()[i], train.features()[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    out.predicted.push_back(train.labels()[best]);
    if (out.predicted.back() == test.labels()[i]) ++out.correct;
  }
  out.accuracy = static_cast<double>(out.correct) / static_cast<double>(test.size());
  return out;
}

Standardized standardize(const LabeledFeatureSet& train, const LabeledFeatureSet& test) {
  if (train.feature_names() != test.feature_names()) {
    throw std::invalid_argument("training and test features differ");
  }
  const std::size_t n = train.feature_names().size();
  Standardized out;
  out.mean.assign(n, 0.0);
  out.stddev.assign(n, 0.0);
  out.constant.assign(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    detail::CompensatedSum sum;
    std::size_t count = 0;
    for (const auto& f : train.features()) {
      if (!usable(f, k)) continue;
      sum.add(f.values[k]);
      ++count;
    }
    if (count == 0) {
      out.constant[k] = true;
      continue;
    }
    const double mean = sum.value() / static_cast<double>(count);
    detail::CompensatedSum sq;
    for (const auto& f : train.features()) {
      if (!usable(f, k)) continue;
      const double d = f.values[k] - mean;
      sq.add(d * d);
    }
    out.mean[k] = mean;
    out.stddev[k] = std::sqrt(sq.value() / static_cast<double>(count));
    out.constant[k] = !(out.stddev[k] > 0.0);
  }

  const auto apply = [&](const LabeledFeatureSet& in) {
    LabeledFeatureSet result(in.feature_names());
    for (std::size_t i = 0; i < in.size(); ++i) {
      FeatureVector f = in.features()[i];
      for (std::size_t k = 0; k < n; ++k) {
        if (out.constant[k] || !usable(f, k)) continue;
        f.values[k] = (f.values[k] - out.mean[k]) / out.stddev[k];
      }
      result.add(in.labels()[i], std::move(f));
    }
    return result;
  };
  out.train = apply(train);
  out.test = apply(test);
  return out;
}

}  // namespace rmbmi

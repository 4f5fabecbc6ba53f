#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rmbmi/invariants.hpp"

namespace rmbmi {

/// |a - b| / (|a| + |b|), with 0/0 taken as 0.
double relative_error(double a, double b);

/// Per-feature mean relative error, in percent, of each degraded vector
/// against the reference. Pairs where either side is flagged unreliable are
/// left out; a feature with no usable pair reports 0 and counts all its
/// pairs in `excluded`.
struct MreResult {
  std::vector<double> percent;
  std::vector<std::size_t> excluded;
};
MreResult mre(const FeatureVector& reference, const std::vector<FeatureVector>& degraded);

/// Corpus-level MRE: the per-image MREs averaged over images.
class MreAccumulator {
 public:
  explicit MreAccumulator(std::vector<std::string> names);

  void add_image(const FeatureVector& reference, const std::vector<FeatureVector>& degraded);

  const std::vector<std::string>& names() const noexcept { return names_; }
  /// Mean over images that had at least one usable pair for the feature.
  std::vector<double> percent() const;
  const std::vector<std::size_t>& excluded() const noexcept { return excluded_; }
  std::size_t pairs() const noexcept { return pairs_; }

 private:
  std::vector<std::string> names_;
  std::vector<double> sum_;
  std::vector<std::size_t> images_;
  std::vector<std::size_t> excluded_;
  std::size_t pairs_ = 0;
};

/// sum (x - y)^2 / (|x| + |y|) over features unflagged in both vectors;
/// zero denominators contribute 0.
double chi_square_distance(const FeatureVector& x, const FeatureVector& y);
/// sum |x - y| / (|x| + |y|), same exclusions.
double relative_l1_distance(const FeatureVector& x, const FeatureVector& y);

using DistanceFn = std::function<double(const FeatureVector&, const FeatureVector&)>;

/// Feature vectors with class labels, all sharing one name list.
class LabeledFeatureSet {
 public:
  LabeledFeatureSet() = default;
  explicit LabeledFeatureSet(std::vector<std::string> feature_names);

  /// Throws std::invalid_argument when the names differ from the set's.
  void add(std::string label, FeatureVector features);

  const std::vector<std::string>& feature_names() const noexcept { return names_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<FeatureVector>& features() const noexcept { return features_; }
  std::size_t size() const noexcept { return features_.size(); }
  bool empty() const noexcept { return features_.empty(); }

 private:
  std::vector<std::string> names_;
  std::vector<std::string> labels_;
  std::vector<FeatureVector> features_;
};

struct Classification {
  std::vector<std::string> predicted;
  std::size_t correct = 0;
  double accuracy = 0.0;  ///< fraction in [0, 1]
};

/// 1-NN: each test entry takes the label of the closest training entry, the
/// lowest training index winning ties. Throws DegenerateInput on empty sets.
Classification nn_classify(const LabeledFeatureSet& train, const LabeledFeatureSet& test,
                           const DistanceFn& distance = chi_square_distance);

struct Standardized {
  LabeledFeatureSet train;
  LabeledFeatureSet test;
  std::vector<double> mean;
  std::vector<double> stddev;
  /// Columns with zero training variance; they are passed through unscaled.
  std::vector<bool> constant;
};

/// z-scores both sets with the training mean and population standard
/// deviation. Flags are carried over unchanged.
Standardized standardize(const LabeledFeatureSet& train, const LabeledFeatureSet& test);

}  // namespace rmbmi

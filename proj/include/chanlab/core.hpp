// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace chanlab {

/// One embedding: channel activations z_1..z_d.
using FeatureVector = std::vector<double>;

/// All vectors of one class, in file order.
struct LabeledClass {
  std::string name;
  std::vector<FeatureVector> vectors;

  bool operator==(const LabeledClass &) const = default;
};

/// Feature vectors grouped by class. Immutable after construction; class
/// indices follow first-appearance order of the labels.
class EmbeddingDataset {
 public:
  /// Validates every invariant: positive dimensionality, consistent vector
  /// lengths, finite values, non-empty classes with unique names.
  EmbeddingDataset(std::size_t dim, std::vector<LabeledClass> classes);

  std::size_t dim() const { return dim_; }
  std::size_t num_classes() const { return classes_.size(); }
  std::size_t total_vectors() const;
  bool non_negative() const { return non_negative_; }

  const LabeledClass &cls(std::size_t index) const { return classes_.at(index); }
  std::span<const LabeledClass> classes() const { return classes_; }
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const EmbeddingDataset &other) const {
    return dim_ == other.dim_ && classes_ == other.classes_;
  }

 private:
  std::size_t dim_;
  std::vector<LabeledClass> classes_;
  bool non_negative_ = true;
};

/// Collects (label, vector) records and groups them by label in
/// first-appearance order.
class DatasetBuilder {
 public:
  explicit DatasetBuilder(std::size_t dim) : dim_(dim) {}
  void add(std::string_view label, FeatureVector values);
  std::size_t records() const { return records_; }
  EmbeddingDataset build() &&;

 private:
  std::size_t dim_;
  std::size_t records_ = 0;
  std::vector<LabeledClass> classes_;
};

/// Per-channel mean and standard deviation of one class.
struct ChannelStats {
  std::vector<double> mu;
  std::vector<double> sigma;

  std::size_t dim() const { return mu.size(); }
};

/// Per-channel mean magnitude weights, optionally l1-normalised.
struct MMCVector {
  std::vector<double> weights;
  bool normalized = false;

  std::size_t dim() const { return weights.size(); }
};

/// Returns a copy of `v` scaled to unit l1 norm and flagged as normalised.
/// Throws DomainError when every entry is zero.
MMCVector l1_normalize(const MMCVector &v);

/// One N-way K-shot task. Position i in `classes` is the episode-local label
/// of dataset class `classes[i]`.
struct Episode {
  std::size_t n_way = 0;
  std::size_t k_shot = 0;
  std::size_t m_query = 0;
  std::vector<std::size_t> classes;
  std::vector<std::vector<FeatureVector>> support;
  std::vector<std::vector<FeatureVector>> query;
  // Row indices within each dataset class, for provenance/disjointness checks.
  std::vector<std::vector<std::size_t>> support_rows;
  std::vector<std::vector<std::size_t>> query_rows;
};

/// Result of an episodic evaluation run.
struct EvalReport {
  std::vector<double> per_episode_accuracy;
  double mean_accuracy = 0.0;
  double ci95_halfwidth = 0.0;
  nlohmann::json config_echo = nlohmann::json::object();
  std::uint64_t seed = 0;
};

/// Fills mean_accuracy and ci95_halfwidth (1.96 * sample std / sqrt(n)) from
/// the per-episode list.
void summarize(EvalReport &report);

double mean_of(std::span<const double> values);

/// 1.96 * sample standard deviation / sqrt(n); 0 when n < 2.
double ci95_halfwidth(std::span<const double> values);

}  // namespace chanlab

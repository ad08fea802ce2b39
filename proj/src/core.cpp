// SPDX-License-Identifier: Apache-2.0
#include "chanlab/core.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>

#include "chanlab/error.hpp"

namespace chanlab {

EmbeddingDataset::EmbeddingDataset(std::size_t dim, std::vector<LabeledClass> classes)
    : dim_(dim), classes_(std::move(classes)) {
  if (dim_ == 0) throw ValidationError("dataset dimensionality must be positive");
  std::unordered_set<std::string> names;
  for (const auto &c : classes_) {
    if (!names.insert(c.name).second)
      throw ValidationError("duplicate class name '" + c.name + "'");
    if (c.vectors.empty()) throw ValidationError("class '" + c.name + "' has no vectors");
    for (const auto &v : c.vectors) {
      if (v.size() != dim_)
        throw ValidationError("class '" + c.name + "' has a vector of length " +
                              std::to_string(v.size()) + ", expected " + std::to_string(dim_));
      for (double x : v) {
        if (!std::isfinite(x))
          throw ValidationError("class '" + c.name + "' contains a non-finite value");
        if (x < 0.0) non_negative_ = false;
      }
    }
  }
}

std::size_t EmbeddingDataset::total_vectors() const {
  std::size_t n = 0;
  for (const auto &c : classes_) n += c.vectors.size();
  return n;
}

std::optional<std::size_t> EmbeddingDataset::find(std::string_view name) const {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (classes_[i].name == name) return i;
  return std::nullopt;
}

void DatasetBuilder::add(std::string_view label, FeatureVector values) {
  ++records_;
  for (auto &c : classes_) {
    if (c.name == label) {
      c.vectors.push_back(std::move(values));
      return;
    }
  }
  classes_.push_back(LabeledClass{std::string(label), {std::move(values)}});
}

EmbeddingDataset DatasetBuilder::build() && {
  if (classes_.empty()) throw EmptyInputError("dataset contains no records");
  return EmbeddingDataset(dim_, std::move(classes_));
}

MMCVector l1_normalize(const MMCVector &v) {
  double total = 0.0;
  for (double w : v.weights) total += std::abs(w);
  if (!(total > 0.0)) throw DomainError("cannot l1-normalise an all-zero MMC vector");
  MMCVector out{v.weights, true};
  for (double &w : out.weights) w = std::abs(w) / total;
  return out;
}

double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double ci95_halfwidth(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double m = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

void summarize(EvalReport &report) {
  report.mean_accuracy = mean_of(report.per_episode_accuracy);
  report.ci95_halfwidth = ci95_halfwidth(report.per_episode_accuracy);
}

}  // namespace chanlab

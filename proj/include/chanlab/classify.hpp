// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "chanlab/core.hpp"
#include "chanlab/oracle.hpp"

namespace chanlab {

/// Support (or query) vectors grouped by episode-local class label.
using LabeledGroups = std::vector<std::vector<FeatureVector>>;

struct CentroidModel {
  std::vector<FeatureVector> centroids;
  std::vector<std::size_t> class_indices;
};

CentroidModel ncc_fit(const LabeledGroups &support);

/// Index (into model.centroids) of the nearest centroid in Euclidean distance;
/// ties go to the lowest index.
std::size_t ncc_predict(const FeatureVector &query, const CentroidModel &model);

/// Binary omega-weighted nearest centroid on standardised features. Returns 1
/// when ||w (.) (z - m1)|| < ||w (.) (z - m2)||, otherwise 2.
int weighted_ncc_predict(const FeatureVector &query_std, const FeatureVector &mu1_std,
                         const FeatureVector &mu2_std, const MMCVector &omega);

struct LinearConfig {
  /// Penalty (l2_strength / n_samples) / 2 * ||W||^2; the bias is not penalised.
  double l2_strength = 1.0;
  double learning_rate = 0.5;
  std::size_t max_iters = 1000;
  double tol = 1e-8;
  /// Halve the step whenever it would increase the loss. Without it a
  /// divergent step raises NumericError.
  bool backtracking = true;
};

struct LinearModel {
  std::size_t n_classes = 0;
  std::size_t dim = 0;
  std::vector<double> weights;  // row-major n_classes x dim
  std::vector<double> bias;
  std::size_t iterations = 0;
  double final_loss = 0.0;
  double final_learning_rate = 0.0;
  std::vector<double> loss_history;  // loss at iteration 0..iterations
};

/// Dense training matrix built from labelled groups.
struct TrainingSet {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::size_t n_classes = 0;
  std::vector<double> x;  // row-major n x dim
  std::vector<std::size_t> y;

  static TrainingSet from_groups(const LabeledGroups &groups);
};

struct ObjectiveValue {
  double loss = 0.0;
  std::vector<double> grad_weights;
  std::vector<double> grad_bias;
};

/// Mean softmax cross-entropy plus (l2 / 2) ||W||^2, and its gradient.
ObjectiveValue linear_objective(const TrainingSet &data, const std::vector<double> &weights,
                                const std::vector<double> &bias, double l2);

/// Full-batch gradient descent from zero initialisation. Deterministic.
LinearModel linear_fit(const LabeledGroups &support, const LinearConfig &cfg = {});

/// argmax of W z + b; ties go to the lowest index.
std::size_t linear_predict(const FeatureVector &query, const LinearModel &model);

}  // namespace chanlab

// SPDX-License-Identifier: Apache-2.0
#include "chanlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chanlab/error.hpp"

namespace chanlab {

CentroidModel ncc_fit(const LabeledGroups &support) {
  if (support.empty()) throw DomainError("ncc_fit: no classes");
  CentroidModel model;
  const std::size_t d = support.front().empty() ? 0 : support.front().front().size();
  for (std::size_t c = 0; c < support.size(); ++c) {
    const auto &group = support[c];
    if (group.empty()) throw DomainError("ncc_fit: class " + std::to_string(c) + " is empty");
    FeatureVector centroid(d, 0.0);
    for (const auto &v : group) {
      if (v.size() != d) throw DomainError("ncc_fit: dimension mismatch");
      for (std::size_t l = 0; l < d; ++l) centroid[l] += v[l];
    }
    for (auto &x : centroid) x /= static_cast<double>(group.size());
    model.centroids.push_back(std::move(centroid));
    model.class_indices.push_back(c);
  }
  return model;
}

std::size_t ncc_predict(const FeatureVector &query, const CentroidModel &model) {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.centroids.size(); ++c) {
    const auto &centroid = model.centroids[c];
    if (centroid.size() != query.size()) throw DomainError("ncc_predict: dimension mismatch");
    double dist = 0.0;
    for (std::size_t l = 0; l < query.size(); ++l) {
      const double diff = query[l] - centroid[l];
      dist += diff * diff;
    }
    if (dist < best_dist) {
      best_dist = dist;
      best = c;
    }
  }
  return best;
}

int weighted_ncc_predict(const FeatureVector &query_std, const FeatureVector &mu1_std,
                         const FeatureVector &mu2_std, const MMCVector &omega) {
  const std::size_t d = query_std.size();
  if (mu1_std.size() != d || mu2_std.size() != d || omega.dim() != d)
    throw DomainError("weighted_ncc_predict: dimension mismatch");
  double d1 = 0.0;
  double d2 = 0.0;
  for (std::size_t l = 0; l < d; ++l) {
    const double w2 = omega.weights[l] * omega.weights[l];
    const double e1 = query_std[l] - mu1_std[l];
    const double e2 = query_std[l] - mu2_std[l];
    d1 += w2 * e1 * e1;
    d2 += w2 * e2 * e2;
  }
  return d1 < d2 ? 1 : 2;
}

TrainingSet TrainingSet::from_groups(const LabeledGroups &groups) {
  TrainingSet t;
  t.n_classes = groups.size();
  for (std::size_t c = 0; c < groups.size(); ++c) {
    for (const auto &v : groups[c]) {
      if (t.n == 0) t.dim = v.size();
      if (v.size() != t.dim) throw DomainError("training set: dimension mismatch");
      t.x.insert(t.x.end(), v.begin(), v.end());
      t.y.push_back(c);
      ++t.n;
    }
  }
  return t;
}

ObjectiveValue linear_objective(const TrainingSet &data, const std::vector<double> &weights,
                                const std::vector<double> &bias, double l2) {
  const std::size_t k = data.n_classes;
  const std::size_t d = data.dim;
  ObjectiveValue out;
  out.grad_weights.assign(k * d, 0.0);
  out.grad_bias.assign(k, 0.0);

  std::vector<double> logits(k);
  const double inv_n = 1.0 / static_cast<double>(data.n);
  double loss = 0.0;
  for (std::size_t i = 0; i < data.n; ++i) {
    const double *xi = data.x.data() + i * d;
    for (std::size_t c = 0; c < k; ++c) {
      const double *wc = weights.data() + c * d;
      double z = bias[c];
      for (std::size_t l = 0; l < d; ++l) z += wc[l] * xi[l];
      logits[c] = z;
    }
    const double zmax = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (auto &z : logits) {
      z = std::exp(z - zmax);
      sum += z;
    }
    loss += std::log(sum) + zmax - (std::log(logits[data.y[i]]) + zmax);
    for (std::size_t c = 0; c < k; ++c) {
      const double g = (logits[c] / sum - (c == data.y[i] ? 1.0 : 0.0)) * inv_n;
      out.grad_bias[c] += g;
      double *gw = out.grad_weights.data() + c * d;
      for (std::size_t l = 0; l < d; ++l) gw[l] += g * xi[l];
    }
  }
  double wnorm = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    wnorm += weights[j] * weights[j];
    out.grad_weights[j] += l2 * weights[j];
  }
  out.loss = loss * inv_n + 0.5 * l2 * wnorm;
  return out;
}

LinearModel linear_fit(const LabeledGroups &support, const LinearConfig &cfg) {
  if (support.size() < 2) throw DomainError("linear_fit needs at least two classes");
  for (std::size_t c = 0; c < support.size(); ++c)
    if (support[c].empty()) throw DomainError("linear_fit: class " + std::to_string(c) + " is empty");
  if (!(cfg.learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (!(cfg.l2_strength >= 0.0)) throw ConfigError("l2_strength must be non-negative");

  const TrainingSet data = TrainingSet::from_groups(support);
  const double l2 = cfg.l2_strength / static_cast<double>(data.n);

  LinearModel m;
  m.n_classes = data.n_classes;
  m.dim = data.dim;
  m.weights.assign(m.n_classes * m.dim, 0.0);
  m.bias.assign(m.n_classes, 0.0);

  ObjectiveValue current = linear_objective(data, m.weights, m.bias, l2);
  m.loss_history.push_back(current.loss);
  double lr = cfg.learning_rate;
  std::vector<double> w_next(m.weights.size());
  std::vector<double> b_next(m.bias.size());

  while (m.iterations < cfg.max_iters) {
    for (std::size_t j = 0; j < w_next.size(); ++j)
      w_next[j] = m.weights[j] - lr * current.grad_weights[j];
    for (std::size_t c = 0; c < b_next.size(); ++c)
      b_next[c] = m.bias[c] - lr * current.grad_bias[c];
    ObjectiveValue next = linear_objective(data, w_next, b_next, l2);

    if (!std::isfinite(next.loss) || next.loss > current.loss) {
      if (!cfg.backtracking) {
        if (!std::isfinite(next.loss))
          throw NumericError("linear_fit diverged (non-finite loss at iteration " +
                             std::to_string(m.iterations + 1) +
                             "); use a smaller learning rate");
      } else {
        lr *= 0.5;
        if (lr < 1e-12) break;  // no descent step left: stationary to working precision
        continue;
      }
    }

    const double decrease = current.loss - next.loss;
    m.weights.swap(w_next);
    m.bias.swap(b_next);
    current = std::move(next);
    ++m.iterations;
    m.loss_history.push_back(current.loss);
    if (decrease >= 0.0 && decrease < cfg.tol) break;
  }
  m.final_loss = current.loss;
  m.final_learning_rate = lr;
  return m;
}

std::size_t linear_predict(const FeatureVector &query, const LinearModel &model) {
  if (query.size() != model.dim) throw DomainError("linear_predict: dimension mismatch");
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.n_classes; ++c) {
    const double *wc = model.weights.data() + c * model.dim;
    double z = model.bias[c];
    for (std::size_t l = 0; l < model.dim; ++l) z += wc[l] * query[l];
    if (z > best_score) {
      best_score = z;
      best = c;
    }
  }
  return best;
}

}  // namespace chanlab

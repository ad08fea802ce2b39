// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "chanlab/classify.hpp"
#include "chanlab/core.hpp"
#include "chanlab/oracle.hpp"
#include "chanlab/transforms.hpp"

namespace chanlab {

struct EpisodeConfig {
  std::size_t n_way = 5;
  std::size_t k_shot = 5;
  std::size_t m_query = 15;
  std::size_t episodes = 10000;
  std::uint64_t seed = 0;

  void validate() const;
  nlohmann::json to_json() const;
};

/// Samples episode `episode_index` from the stream CounterRng::stream(seed,
/// episode_index), so the result does not depend on evaluation order:
///   1. eligible = classes with >= k_shot + m_query vectors, in dataset order;
///   2. partial Fisher-Yates over eligible: for i < n_way swap i with
///      i + below(|eligible| - i); the first n_way entries are the classes;
///   3. for each chosen class in that order, the same partial shuffle over its
///      row indices picks k_shot + m_query rows: the first k_shot are support,
///      the rest query.
Episode sample_episode(const EmbeddingDataset &dataset, const EpisodeConfig &cfg,
                       std::uint64_t episode_index);

/// Diagonal Gaussian description of one synthetic class.
struct ClassGaussian {
  std::string name;
  std::vector<double> mu;
  std::vector<double> sigma;
};

struct SyntheticTaskSpec {
  std::size_t dim = 0;
  std::vector<ClassGaussian> classes;
  /// When set, every channel must satisfy mu >= 4 sigma so clipping at zero
  /// is negligible.
  bool margin_rule = true;

  void validate() const;
};

/// Independent Gaussian channels per class, clipped at 0. Class c draws from
/// CounterRng::stream(seed, c), vector by vector, channel by channel.
/// `clipped_draws`, when given, receives the number of raw draws below 0.
EmbeddingDataset gen_gaussian_task(const SyntheticTaskSpec &spec, std::size_t n_per_class,
                                   std::uint64_t seed, std::size_t *clipped_draws = nullptr);

/// Multiplicative per-channel scale applied to every feature.
struct BiasInjection {
  std::vector<double> scale;

  void validate(std::size_t dim) const;
  /// Scales log-uniform on [1/spread, 1] from CounterRng(stream_key(seed, 0)),
  /// then the smallest and largest are pinned to 1/spread and 1 so the
  /// max/min ratio is exactly `spread`.
  static BiasInjection log_uniform(std::size_t dim, double spread, std::uint64_t seed);
};

EmbeddingDataset inject_bias(const EmbeddingDataset &dataset, const BiasInjection &bias);

/// Monte Carlo estimate of the misclassification rate of the omega-weighted
/// nearest-centroid rule with exact standardised centroids: `trials` unclipped
/// Gaussian draws per class, errors over 2 * trials.
double monte_carlo_risk(const MMCVector &omega, const BinaryTaskStats &stats, std::size_t trials,
                        std::uint64_t seed);

/// Same estimate for several omegas over one shared set of draws; element i
/// equals monte_carlo_risk(omegas[i], stats, trials, seed).
std::vector<double> monte_carlo_risk_many(const std::vector<MMCVector> &omegas,
                                          const BinaryTaskStats &stats, std::size_t trials,
                                          std::uint64_t seed);

struct CantelliSample {
  double empirical = 0.0;
  double bound = 0.0;
};

/// Fraction of N(mu, sigma^2) draws with X - mu >= k sigma, alongside the
/// one-sided Chebyshev bound 1 / (1 + k^2).
CantelliSample verify_cantelli(double mu, double sigma, double k, std::size_t trials,
                               std::uint64_t seed);

/// Oracle channel re-weighting from full-dataset class statistics (binary
/// episodes only).
struct OracleTransform {
  OracleConfig cfg;
};

/// Fixed per-channel multiplier, e.g. the inverse of an injected bias.
struct ChannelRescale {
  std::vector<double> scale;
};

using EvalTransform = std::variant<TransformSpec, OracleTransform, ChannelRescale>;

std::string describe(const EvalTransform &t);

enum class ClassifierKind { Ncc, Linear };

std::string to_string(ClassifierKind kind);

struct EvalOptions {
  ClassifierKind classifier = ClassifierKind::Ncc;
  LinearConfig linear;
  /// Worker threads; results do not depend on this value.
  std::size_t threads = 1;
};

/// Accuracy of one already-transformed episode.
double score_episode(const Episode &episode, const EvalOptions &options);

/// Samples cfg.episodes episodes, transforms every support and query feature,
/// fits the classifier on support and scores the query set.
EvalReport run_evaluation(const EmbeddingDataset &dataset, const EpisodeConfig &cfg,
                          const EvalTransform &transform, const EvalOptions &options = {});

}  // namespace chanlab

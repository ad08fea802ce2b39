// SPDX-License-Identifier: Apache-2.0
#include "chanlab/episodes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

#include "chanlab/error.hpp"
#include "chanlab/rng.hpp"

namespace chanlab {

void EpisodeConfig::validate() const {
  if (n_way == 0 || k_shot == 0 || m_query == 0 || episodes == 0)
    throw ConfigError("n_way, k_shot, m_query and episodes must all be positive");
}

nlohmann::json EpisodeConfig::to_json() const {
  return nlohmann::json{{"n_way", n_way},
                        {"k_shot", k_shot},
                        {"m_query", m_query},
                        {"episodes", episodes},
                        {"seed", seed}};
}

Episode sample_episode(const EmbeddingDataset &dataset, const EpisodeConfig &cfg,
                       std::uint64_t episode_index) {
  cfg.validate();
  const std::size_t per_class = cfg.k_shot + cfg.m_query;
  std::vector<std::size_t> eligible;
  for (std::size_t c = 0; c < dataset.num_classes(); ++c)
    if (dataset.cls(c).vectors.size() >= per_class) eligible.push_back(c);
  if (eligible.size() < cfg.n_way)
    throw ConfigError("need " + std::to_string(cfg.n_way) + " classes with at least " +
                      std::to_string(per_class) + " vectors each, dataset has " +
                      std::to_string(eligible.size()));

  CounterRng rng = CounterRng::stream(cfg.seed, episode_index);
  for (std::size_t i = 0; i < cfg.n_way; ++i) {
    const std::size_t j = i + rng.below(eligible.size() - i);
    std::swap(eligible[i], eligible[j]);
  }

  Episode ep;
  ep.n_way = cfg.n_way;
  ep.k_shot = cfg.k_shot;
  ep.m_query = cfg.m_query;
  ep.classes.assign(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(cfg.n_way));
  ep.support.resize(cfg.n_way);
  ep.query.resize(cfg.n_way);
  ep.support_rows.resize(cfg.n_way);
  ep.query_rows.resize(cfg.n_way);

  std::vector<std::size_t> rows;
  for (std::size_t pos = 0; pos < cfg.n_way; ++pos) {
    const auto &vectors = dataset.cls(ep.classes[pos]).vectors;
    rows.resize(vectors.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    for (std::size_t i = 0; i < per_class; ++i) {
      const std::size_t j = i + rng.below(rows.size() - i);
      std::swap(rows[i], rows[j]);
    }
    for (std::size_t i = 0; i < per_class; ++i) {
      const bool support = i < cfg.k_shot;
      (support ? ep.support_rows : ep.query_rows)[pos].push_back(rows[i]);
      (support ? ep.support : ep.query)[pos].push_back(vectors[rows[i]]);
    }
  }
  return ep;
}

void SyntheticTaskSpec::validate() const {
  if (dim == 0) throw ConfigError("synthetic spec: dimensionality must be positive");
  if (classes.empty()) throw ConfigError("synthetic spec: no classes");
  for (const auto &c : classes) {
    if (c.mu.size() != dim || c.sigma.size() != dim)
      throw ConfigError("synthetic spec: class '" + c.name + "' has wrong vector lengths");
    for (std::size_t l = 0; l < dim; ++l) {
      if (!std::isfinite(c.mu[l]) || !std::isfinite(c.sigma[l]) || c.sigma[l] < 0.0)
        throw ConfigError("synthetic spec: class '" + c.name + "' channel " +
                          std::to_string(l) + " needs finite mu and sigma >= 0");
      if (margin_rule && c.mu[l] < 4.0 * c.sigma[l])
        throw ConfigError("synthetic spec: class '" + c.name + "' channel " +
                          std::to_string(l) + " violates the margin rule mu >= 4 sigma");
    }
  }
}

EmbeddingDataset gen_gaussian_task(const SyntheticTaskSpec &spec, std::size_t n_per_class,
                                   std::uint64_t seed, std::size_t *clipped_draws) {
  spec.validate();
  if (n_per_class == 0) throw ConfigError("n_per_class must be positive");
  std::size_t clipped = 0;
  std::vector<LabeledClass> classes;
  classes.reserve(spec.classes.size());
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    const auto &g = spec.classes[c];
    CounterRng rng = CounterRng::stream(seed, c);
    LabeledClass out{g.name, {}};
    out.vectors.reserve(n_per_class);
    for (std::size_t i = 0; i < n_per_class; ++i) {
      FeatureVector v(spec.dim);
      for (std::size_t l = 0; l < spec.dim; ++l) {
        const double x = g.mu[l] + g.sigma[l] * rng.normal();
        if (x < 0.0) ++clipped;
        v[l] = std::max(x, 0.0);
      }
      out.vectors.push_back(std::move(v));
    }
    classes.push_back(std::move(out));
  }
  if (clipped_draws) *clipped_draws = clipped;
  return EmbeddingDataset(spec.dim, std::move(classes));
}

void BiasInjection::validate(std::size_t dim) const {
  if (scale.size() != dim)
    throw DomainError("bias has " + std::to_string(scale.size()) + " channels, dataset has " +
                      std::to_string(dim));
  for (double s : scale)
    if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("bias scales must be positive and finite");
}

BiasInjection BiasInjection::log_uniform(std::size_t dim, double spread, std::uint64_t seed) {
  if (!(spread >= 1.0) || !std::isfinite(spread)) throw ConfigError("bias spread must be >= 1");
  CounterRng rng = CounterRng::stream(seed, 0);
  std::vector<double> u(dim);
  for (auto &x : u) x = rng.uniform01();
  if (dim >= 2) {
    const auto lo = std::min_element(u.begin(), u.end()) - u.begin();
    const auto hi = std::max_element(u.begin(), u.end()) - u.begin();
    u[static_cast<std::size_t>(lo)] = 0.0;
    u[static_cast<std::size_t>(hi)] = 1.0;
  }
  BiasInjection b;
  b.scale.resize(dim);
  for (std::size_t l = 0; l < dim; ++l) b.scale[l] = std::pow(spread, -u[l]);
  return b;
}

EmbeddingDataset inject_bias(const EmbeddingDataset &dataset, const BiasInjection &bias) {
  bias.validate(dataset.dim());
  std::vector<LabeledClass> classes(dataset.classes().begin(), dataset.classes().end());
  for (auto &c : classes)
    for (auto &v : c.vectors)
      for (std::size_t l = 0; l < v.size(); ++l) v[l] *= bias.scale[l];
  return EmbeddingDataset(dataset.dim(), std::move(classes));
}

std::vector<double> monte_carlo_risk_many(const std::vector<MMCVector> &omegas,
                                          const BinaryTaskStats &stats, std::size_t trials,
                                          std::uint64_t seed) {
  if (trials == 0) throw ConfigError("monte_carlo_risk needs at least one trial");
  const std::size_t d = stats.dim();
  for (const auto &w : omegas)
    if (w.dim() != d) throw DomainError("monte_carlo_risk: omega has wrong dimension");

  const MMCVector orig = original_mmc(stats);
  const FeatureVector mu1 = standardize(stats.first.mu, orig);
  const FeatureVector mu2 = standardize(stats.second.mu, orig);

  std::vector<std::size_t> errors(omegas.size(), 0);
  CounterRng rng = CounterRng::stream(seed, 0);
  FeatureVector z(d);
  for (std::size_t t = 0; t < trials; ++t) {
    for (int cls = 1; cls <= 2; ++cls) {
      const ChannelStats &s = cls == 1 ? stats.first : stats.second;
      for (std::size_t l = 0; l < d; ++l)
        z[l] = (s.mu[l] + s.sigma[l] * rng.normal()) / orig.weights[l];
      for (std::size_t i = 0; i < omegas.size(); ++i)
        if (weighted_ncc_predict(z, mu1, mu2, omegas[i]) != cls) ++errors[i];
    }
  }
  std::vector<double> risk(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i)
    risk[i] = static_cast<double>(errors[i]) / (2.0 * static_cast<double>(trials));
  return risk;
}

double monte_carlo_risk(const MMCVector &omega, const BinaryTaskStats &stats, std::size_t trials,
                        std::uint64_t seed) {
  return monte_carlo_risk_many({omega}, stats, trials, seed).front();
}

CantelliSample verify_cantelli(double mu, double sigma, double k, std::size_t trials,
                               std::uint64_t seed) {
  if (!(sigma > 0.0)) throw DomainError("verify_cantelli: sigma must be positive");
  if (!(k > 0.0)) throw DomainError("verify_cantelli: k must be positive");
  if (trials == 0) throw ConfigError("verify_cantelli needs at least one trial");
  CounterRng rng = CounterRng::stream(seed, 0);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double x = rng.normal(mu, sigma);
    if (x - mu >= k * sigma) ++hits;
  }
  return {static_cast<double>(hits) / static_cast<double>(trials), 1.0 / (1.0 + k * k)};
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void rethrow_with_context(const std::string &prefix) {
  try {
    throw;
  } catch (const ConfigError &e) {
    throw ConfigError(prefix + e.what());
  } catch (const DomainError &e) {
    throw DomainError(prefix + e.what());
  } catch (const NumericError &e) {
    throw NumericError(prefix + e.what());
  } catch (const ValidationError &e) {
    throw ValidationError(prefix + e.what());
  } catch (const Error &e) {
    throw Error(prefix + e.what());
  }
}

/// Per-episode feature mapping prepared once for the whole run.
class EpisodeTransformer {
 public:
  EpisodeTransformer(const EmbeddingDataset &dataset, const EpisodeConfig &cfg,
                     const EvalTransform &transform)
      : transform_(transform) {
    if (const auto *spec = std::get_if<TransformSpec>(&transform_)) {
      validate(*spec);
      if (!dataset.non_negative() && !accepts_negative(*spec))
        throw DomainError("dataset has negative values; " + describe(*spec) +
                          " is only defined on non-negative features (use extended)");
    } else if (const auto *oracle = std::get_if<OracleTransform>(&transform_)) {
      oracle->cfg.validate();
      if (cfg.n_way != 2)
        throw ConfigError("the oracle transform is only defined for binary episodes (n_way = 2)");
      for (const auto &c : dataset.classes()) stats_.push_back(class_stats(c.vectors));
    } else {
      const auto &rescale = std::get<ChannelRescale>(transform_);
      if (rescale.scale.size() != dataset.dim())
        throw ConfigError("channel rescale length does not match the dataset dimensionality");
    }
  }

  void apply(Episode &ep) const {
    std::visit(overloaded{
                   [&](const TransformSpec &spec) {
                     if (std::holds_alternative<transform::None>(spec)) return;
                     for_each_vector(ep, [&](FeatureVector &v) { v = apply_channelwise(v, spec); });
                   },
                   [&](const OracleTransform &oracle) {
                     const BinaryTaskStats pair(stats_[ep.classes[0]], stats_[ep.classes[1]]);
                     const MMCVector orig = original_mmc(pair, oracle.cfg.epsilon);
                     const MMCVector omega = oracle_mmc(pair, oracle.cfg);
                     for_each_vector(ep, [&](FeatureVector &v) { v = apply_oracle(v, omega, orig); });
                   },
                   [&](const ChannelRescale &rescale) {
                     for_each_vector(ep, [&](FeatureVector &v) {
                       for (std::size_t l = 0; l < v.size(); ++l) v[l] *= rescale.scale[l];
                     });
                   },
               },
               transform_);
  }

 private:
  template <typename F>
  static void for_each_vector(Episode &ep, F &&f) {
    for (auto &group : ep.support)
      for (auto &v : group) f(v);
    for (auto &group : ep.query)
      for (auto &v : group) f(v);
  }

  const EvalTransform &transform_;
  std::vector<ChannelStats> stats_;
};

}  // namespace

std::string describe(const EvalTransform &t) {
  return std::visit(overloaded{
                        [](const TransformSpec &spec) { return describe(spec); },
                        [](const OracleTransform &o) {
                          std::ostringstream os;
                          os << "oracle(alpha=" << o.cfg.alpha << ",epsilon=" << o.cfg.epsilon
                             << ")";
                          return os.str();
                        },
                        [](const ChannelRescale &) { return std::string("rescale"); },
                    },
                    t);
}

std::string to_string(ClassifierKind kind) {
  return kind == ClassifierKind::Ncc ? "ncc" : "lc";
}

double score_episode(const Episode &episode, const EvalOptions &options) {
  std::size_t correct = 0;
  std::size_t total = 0;
  if (options.classifier == ClassifierKind::Ncc) {
    const CentroidModel model = ncc_fit(episode.support);
    for (std::size_t c = 0; c < episode.query.size(); ++c)
      for (const auto &q : episode.query[c]) {
        correct += ncc_predict(q, model) == c ? 1 : 0;
        ++total;
      }
  } else {
    const LinearModel model = linear_fit(episode.support, options.linear);
    for (std::size_t c = 0; c < episode.query.size(); ++c)
      for (const auto &q : episode.query[c]) {
        correct += linear_predict(q, model) == c ? 1 : 0;
        ++total;
      }
  }
  return static_cast<double>(correct) / static_cast<double>(total);
}

EvalReport run_evaluation(const EmbeddingDataset &dataset, const EpisodeConfig &cfg,
                          const EvalTransform &transform, const EvalOptions &options) {
  cfg.validate();
  const EpisodeTransformer transformer(dataset, cfg, transform);
  // Fail fast on an impossible episode shape before spawning workers.
  sample_episode(dataset, cfg, 0);

  EvalReport report;
  report.seed = cfg.seed;
  report.per_episode_accuracy.assign(cfg.episodes, 0.0);
  std::vector<std::exception_ptr> failures(cfg.episodes);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t e = next.fetch_add(1);
      if (e >= cfg.episodes) return;
      try {
        Episode ep = sample_episode(dataset, cfg, e);
        transformer.apply(ep);
        report.per_episode_accuracy[e] = score_episode(ep, options);
      } catch (...) {
        failures[e] = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, cfg.episodes));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto &th : pool) th.join();
  }

  for (std::size_t e = 0; e < cfg.episodes; ++e) {
    if (!failures[e]) continue;
    try {
      std::rethrow_exception(failures[e]);
    } catch (...) {
      rethrow_with_context("episode " + std::to_string(e) + ": ");
    }
  }

  summarize(report);
  nlohmann::json echo;
  echo["dataset"] = {{"dim", dataset.dim()},
                     {"classes", dataset.num_classes()},
                     {"vectors", dataset.total_vectors()}};
  echo["episodes"] = cfg.to_json();
  echo["transform"] = describe(transform);
  echo["classifier"] = to_string(options.classifier);
  if (options.classifier == ClassifierKind::Linear) {
    echo["linear"] = {{"l2_strength", options.linear.l2_strength},
                      {"learning_rate", options.linear.learning_rate},
                      {"max_iters", options.linear.max_iters},
                      {"tol", options.linear.tol},
                      {"backtracking", options.linear.backtracking}};
  }
  report.config_echo = std::move(echo);
  return report;
}

}  // namespace chanlab

// SPDX-License-Identifier: Apache-2.0
#include "chanlab/oracle.hpp"

#include <cmath>
#include <sstream>

#include "chanlab/error.hpp"

namespace chanlab {

BinaryTaskStats::BinaryTaskStats(ChannelStats a, ChannelStats b)
    : first(std::move(a)), second(std::move(b)) {
  const std::size_t d = first.mu.size();
  if (first.sigma.size() != d || second.mu.size() != d || second.sigma.size() != d)
    throw ValidationError("binary task statistics have mismatched lengths");
  for (std::size_t l = 0; l < d; ++l) {
    if (!(first.sigma[l] >= 0.0) || !(second.sigma[l] >= 0.0))
      throw ValidationError("negative standard deviation on channel " + std::to_string(l));
  }
}

void OracleConfig::validate() const {
  if (!(alpha >= 1.0)) throw ConfigError("alpha must be >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be > 0");
}

ChannelStats class_stats(std::span<const FeatureVector> vectors) {
  if (vectors.empty()) throw DomainError("class_stats needs at least one vector");
  const std::size_t d = vectors.front().size();
  ChannelStats s{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (const auto &v : vectors) {
    if (v.size() != d) throw ValidationError("class_stats: vectors differ in length");
    for (std::size_t l = 0; l < d; ++l) s.mu[l] += v[l];
  }
  const double n = static_cast<double>(vectors.size());
  for (auto &m : s.mu) m /= n;
  for (const auto &v : vectors)
    for (std::size_t l = 0; l < d; ++l) s.sigma[l] += (v[l] - s.mu[l]) * (v[l] - s.mu[l]);
  for (auto &x : s.sigma) x = std::sqrt(x / n);
  return s;
}

MMCVector original_mmc(const BinaryTaskStats &stats, double epsilon) {
  MMCVector out{std::vector<double>(stats.dim()), false};
  for (std::size_t l = 0; l < stats.dim(); ++l)
    out.weights[l] = std::max(0.5 * (stats.first.mu[l] + stats.second.mu[l]), epsilon);
  return out;
}

FeatureVector standardize(const FeatureVector &v, const MMCVector &original) {
  if (v.size() != original.dim())
    throw DomainError("standardize: feature has " + std::to_string(v.size()) +
                      " channels, MMC has " + std::to_string(original.dim()));
  FeatureVector out(v.size());
  for (std::size_t l = 0; l < v.size(); ++l) {
    if (!(original.weights[l] > 0.0))
      throw DomainError("standardize: original MMC of channel " + std::to_string(l) +
                        " is not positive");
    out[l] = v[l] / original.weights[l];
  }
  return out;
}

MMCVector oracle_mmc(const BinaryTaskStats &stats, const OracleConfig &cfg) {
  cfg.validate();
  const std::size_t d = stats.dim();
  const MMCVector orig = original_mmc(stats, cfg.epsilon);

  std::vector<double> raw(d, 0.0);
  std::vector<bool> degenerate(d, false);
  double raw_total = 0.0;
  double orig_total = 0.0;
  for (std::size_t l = 0; l < d; ++l) {
    const double dmu = std::abs(stats.first.mu[l] - stats.second.mu[l]);
    const double spread = stats.first.sigma[l] + stats.second.sigma[l];
    if (dmu < cfg.epsilon || spread < cfg.epsilon) {
      degenerate[l] = true;
      continue;
    }
    raw[l] = dmu / spread;
    raw_total += raw[l];
    orig_total += orig.weights[l];
  }

  MMCVector out{orig.weights, false};
  if (raw_total > 0.0) {
    const double scale = orig_total / raw_total;
    for (std::size_t l = 0; l < d; ++l)
      if (!degenerate[l]) out.weights[l] = raw[l] * scale;
  }
  for (std::size_t l = 0; l < d; ++l)
    if (out.weights[l] / orig.weights[l] > cfg.alpha) out.weights[l] = orig.weights[l];
  return out;
}

FeatureVector apply_oracle(const FeatureVector &v, const MMCVector &omega,
                           const MMCVector &original) {
  if (omega.dim() != original.dim() || v.size() != omega.dim())
    throw DomainError("apply_oracle: dimension mismatch");
  FeatureVector out = standardize(v, original);
  for (std::size_t l = 0; l < out.size(); ++l) out[l] *= omega.weights[l];
  return out;
}

void check_bound_assumptions(const BinaryTaskStats &stats) {
  std::ostringstream bad;
  bool any = false;
  for (std::size_t l = 0; l < stats.dim(); ++l) {
    const bool same_mean = stats.first.mu[l] == stats.second.mu[l];
    const bool no_spread = !(stats.first.sigma[l] + stats.second.sigma[l] > 0.0);
    if (same_mean || no_spread) {
      bad << (any ? ", " : "") << l << (same_mean ? " (equal means)" : " (zero spread)");
      any = true;
    }
  }
  if (any) throw PreconditionError("risk bound assumptions violated on channels: " + bad.str());
}

void bound_coefficients(const BinaryTaskStats &stats, std::vector<double> &a,
                        std::vector<double> &b) {
  const MMCVector orig = original_mmc(stats);
  const std::size_t d = stats.dim();
  a.assign(d, 0.0);
  b.assign(d, 0.0);
  for (std::size_t l = 0; l < d; ++l) {
    const double w = orig.weights[l];
    const double dmu = (stats.first.mu[l] - stats.second.mu[l]) / w;
    const double spread = (stats.first.sigma[l] + stats.second.sigma[l]) / w;
    a[l] = dmu * dmu;
    b[l] = spread * spread;
  }
}

double risk_upper_bound(const MMCVector &omega, const BinaryTaskStats &stats) {
  check_bound_assumptions(stats);
  if (omega.dim() != stats.dim()) throw DomainError("risk_upper_bound: dimension mismatch");
  std::vector<double> a, b;
  bound_coefficients(stats, a, b);
  double num = 0.0;
  double den = 0.0;
  bool nonzero = false;
  for (std::size_t l = 0; l < stats.dim(); ++l) {
    const double w = omega.weights[l];
    if (w < 0.0 || !std::isfinite(w))
      throw DomainError("risk_upper_bound: omega must be non-negative and finite");
    if (w > 0.0) nonzero = true;
    const double w2 = w * w;
    num += w2 * w2 * b[l];
    den += w2 * a[l];
  }
  if (!nonzero) throw DomainError("risk_upper_bound: omega is all zero");
  return 8.0 * num / (den * den);
}

double lemma_objective(std::span<const double> a, std::span<const double> b,
                       std::span<const double> x) {
  if (a.size() != b.size() || a.size() != x.size())
    throw DomainError("lemma_objective: length mismatch");
  double num = 0.0;
  double lin = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += b[i] * x[i] * x[i];
    lin += a[i] * x[i];
  }
  if (!(lin > 0.0)) throw DomainError("lemma_objective: x must be non-zero and non-negative");
  return num / (lin * lin);
}

LemmaMinimum lemma_min(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw DomainError("lemma_min: length mismatch");
  LemmaMinimum m;
  m.direction.resize(a.size());
  double s = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !(b[i] > 0.0))
      throw DomainError("lemma_min: entries of a and b must be positive");
    s += a[i] * a[i] / b[i];
    m.direction[i] = a[i] / b[i];
    norm += m.direction[i];
  }
  for (auto &x : m.direction) x /= norm;
  m.value = 1.0 / s;
  return m;
}

}  // namespace chanlab

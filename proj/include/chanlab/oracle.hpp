// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <span>
#include <vector>

#include "chanlab/core.hpp"

namespace chanlab {

/// Statistics of the two classes of a binary task.
struct BinaryTaskStats {
  ChannelStats first;
  ChannelStats second;

  BinaryTaskStats(ChannelStats a, ChannelStats b);
  std::size_t dim() const { return first.dim(); }
};

struct OracleConfig {
  /// Channels whose oracle weight exceeds alpha times their original MMC fall
  /// back to the original MMC. Infinity disables the cap.
  double alpha = 50.0;
  /// Floor for original MMC entries and threshold for degenerate channels.
  double epsilon = 1e-8;

  static OracleConfig uncapped() { return {std::numeric_limits<double>::infinity(), 1e-8}; }
  void validate() const;
};

/// Per-channel sample mean and population (1/n) standard deviation.
ChannelStats class_stats(std::span<const FeatureVector> vectors);

/// omega^o_l = (mu_1l + mu_2l) / 2, floored at epsilon.
MMCVector original_mmc(const BinaryTaskStats &stats, double epsilon = 1e-8);

/// z_l / omega^o_l. Throws DomainError on a non-positive weight.
FeatureVector standardize(const FeatureVector &v, const MMCVector &original);

/// Oracle channel importance. Raw weights |mu_1l - mu_2l| / (sigma_1l + sigma_2l)
/// are rescaled so their total matches the original MMC over the same
/// channels; degenerate channels (|dmu| < eps or sigma sum < eps) keep their
/// original MMC; finally any channel with weight / original > alpha is reset
/// to its original MMC.
MMCVector oracle_mmc(const BinaryTaskStats &stats, const OracleConfig &cfg = {});

/// omega (.) standardize(v, omega^o).
FeatureVector apply_oracle(const FeatureVector &v, const MMCVector &omega,
                           const MMCVector &original);

/// Misclassification-rate bound of the omega-weighted nearest-centroid rule
///   8 sum_l w_l^4 (s~_1l + s~_2l)^2 / (sum_l w_l^2 (m~_1l - m~_2l)^2)^2
/// where ~ denotes division by the (floored) original MMC. Requires
/// mu_1l != mu_2l and sigma_1l + sigma_2l > 0 on every channel.
double risk_upper_bound(const MMCVector &omega, const BinaryTaskStats &stats);

/// Throws PreconditionError listing channels with equal means or zero spread.
void check_bound_assumptions(const BinaryTaskStats &stats);

struct LemmaMinimum {
  double value = 0.0;
  std::vector<double> direction;  // l1-normalised argmin
};

/// f(x) = sum b_i x_i^2 / (sum a_i x_i)^2 on the non-negative orthant.
double lemma_objective(std::span<const double> a, std::span<const double> b,
                       std::span<const double> x);

/// Closed-form minimum of lemma_objective: 1 / sum(a_i^2 / b_i) attained on
/// the ray x_i proportional to a_i / b_i.
LemmaMinimum lemma_min(std::span<const double> a, std::span<const double> b);

/// Coefficients mapping the bound onto lemma_objective with x_l = w_l^2:
/// a_l = (m~_1l - m~_2l)^2, b_l = (s~_1l + s~_2l)^2.
void bound_coefficients(const BinaryTaskStats &stats, std::vector<double> &a,
                        std::vector<double> &b);

}  // namespace chanlab

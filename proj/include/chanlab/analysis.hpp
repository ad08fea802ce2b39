// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "chanlab/core.hpp"
#include "chanlab/oracle.hpp"
#include "chanlab/transforms.hpp"

namespace chanlab {

/// Task/image-level distances are reported multiplied by this factor.
inline constexpr double kDistanceReportScale = 1e6;

namespace mmc_mode {
/// Mean magnitude of the raw features.
struct Original {};
/// Mean magnitude of phi_k-transformed features.
struct Simple {
  double k = kDefaultK;
};
/// Oracle channel importance of the pair.
struct Oracle {
  OracleConfig cfg;
};
}  // namespace mmc_mode

using MmcMode = std::variant<mmc_mode::Original, mmc_mode::Simple, mmc_mode::Oracle>;

std::string describe(const MmcMode &mode);

struct DatasetMMC {
  MMCVector weights;  // l1-normalised
  MmcMode mode;
  std::size_t pair_count = 0;
};

/// l1-normalised MMC of the binary task (class i, class j) under `mode`.
/// Magnitudes are absolute values; per-class mean magnitudes are averaged
/// across the two classes.
MMCVector pair_mmc(const EmbeddingDataset &dataset, std::size_t i, std::size_t j,
                   const MmcMode &mode);
MMCVector pair_mmc(const EmbeddingDataset &dataset, std::string_view class_a,
                   std::string_view class_b, const MmcMode &mode);

/// l1-normalised sum of the normalised MMCs of all C(C,2) class pairs.
DatasetMMC dataset_mmc(const EmbeddingDataset &dataset, const MmcMode &mode);

/// (1/d) sum (x_l - y_l)^2 / x_l^2; `x` is the reference and must have no zeros.
double normalized_msd(std::span<const double> x, std::span<const double> y);

/// (1/d) sum (x_l - y_l)^2.
double msd(std::span<const double> x, std::span<const double> y);

/// normalized_msd(reference.weights, other.weights).
double dataset_level_distance(const DatasetMMC &reference, const DatasetMMC &other);

/// Mean msd between the two modes' normalised pair MMCs over all class pairs.
double task_level_distance(const EmbeddingDataset &dataset, const MmcMode &mode_a,
                           const MmcMode &mode_b);

/// Mean msd between l1-normalised transformed features over every vector.
double image_level_distance(const EmbeddingDataset &dataset, const TransformSpec &a,
                            const TransformSpec &b);

/// CSV with header `channel,mmc_before,mmc_after`, one row per channel.
std::string channel_comparison_csv(const MMCVector &before, const MMCVector &after);

}  // namespace chanlab

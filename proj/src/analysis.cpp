// SPDX-License-Identifier: Apache-2.0
#include "chanlab/analysis.hpp"

#include <cmath>
#include <sstream>

#include "chanlab/error.hpp"
#include "chanlab/json_writer.hpp"

namespace chanlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

/// Per-class quantities a mode needs, computed once per class.
struct ClassSummary {
  std::vector<double> mean_magnitude;
  ChannelStats stats;
};

ClassSummary summarize_class(const LabeledClass &cls, const MmcMode &mode) {
  ClassSummary s;
  const std::size_t d = cls.vectors.front().size();
  s.mean_magnitude.assign(d, 0.0);
  std::visit(overloaded{
                 [&](const mmc_mode::Original &) {
                   for (const auto &v : cls.vectors)
                     for (std::size_t l = 0; l < d; ++l) s.mean_magnitude[l] += std::abs(v[l]);
                 },
                 [&](const mmc_mode::Simple &m) {
                   for (const auto &v : cls.vectors)
                     for (std::size_t l = 0; l < d; ++l)
                       s.mean_magnitude[l] += std::abs(extended_transform(v[l], m.k));
                 },
                 [&](const mmc_mode::Oracle &) { s.stats = class_stats(cls.vectors); },
             },
             mode);
  for (auto &x : s.mean_magnitude) x /= static_cast<double>(cls.vectors.size());
  return s;
}

MMCVector combine(const ClassSummary &a, const ClassSummary &b, const MmcMode &mode) {
  MMCVector raw;
  if (const auto *oracle = std::get_if<mmc_mode::Oracle>(&mode)) {
    raw = oracle_mmc(BinaryTaskStats(a.stats, b.stats), oracle->cfg);
  } else {
    raw.weights.resize(a.mean_magnitude.size());
    for (std::size_t l = 0; l < raw.weights.size(); ++l)
      raw.weights[l] = 0.5 * (a.mean_magnitude[l] + b.mean_magnitude[l]);
  }
  return l1_normalize(raw);
}

std::vector<ClassSummary> summarize_all(const EmbeddingDataset &dataset, const MmcMode &mode) {
  std::vector<ClassSummary> out;
  out.reserve(dataset.num_classes());
  for (const auto &c : dataset.classes()) out.push_back(summarize_class(c, mode));
  return out;
}

void require_two_classes(const EmbeddingDataset &dataset) {
  if (dataset.num_classes() < 2)
    throw DomainError("MMC analysis needs at least two classes, dataset has " +
                      std::to_string(dataset.num_classes()));
}

void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty())
    throw DomainError("distance: vectors must be non-empty and of equal length");
}

}  // namespace

std::string describe(const MmcMode &mode) {
  return std::visit(overloaded{
                        [](const mmc_mode::Original &) { return std::string("original"); },
                        [](const mmc_mode::Simple &m) {
                          std::ostringstream os;
                          os << "simple(k=" << m.k << ")";
                          return os.str();
                        },
                        [](const mmc_mode::Oracle &m) {
                          std::ostringstream os;
                          os << "oracle(alpha=" << m.cfg.alpha << ")";
                          return os.str();
                        },
                    },
                    mode);
}

MMCVector pair_mmc(const EmbeddingDataset &dataset, std::size_t i, std::size_t j,
                   const MmcMode &mode) {
  if (i >= dataset.num_classes() || j >= dataset.num_classes())
    throw DomainError("pair_mmc: class index out of range");
  if (i == j) throw DomainError("pair_mmc: classes must be distinct");
  return combine(summarize_class(dataset.cls(i), mode), summarize_class(dataset.cls(j), mode),
                 mode);
}

MMCVector pair_mmc(const EmbeddingDataset &dataset, std::string_view class_a,
                   std::string_view class_b, const MmcMode &mode) {
  const auto i = dataset.find(class_a);
  const auto j = dataset.find(class_b);
  if (!i) throw DomainError("unknown class '" + std::string(class_a) + "'");
  if (!j) throw DomainError("unknown class '" + std::string(class_b) + "'");
  return pair_mmc(dataset, *i, *j, mode);
}

DatasetMMC dataset_mmc(const EmbeddingDataset &dataset, const MmcMode &mode) {
  require_two_classes(dataset);
  const auto summaries = summarize_all(dataset, mode);
  MMCVector sum{std::vector<double>(dataset.dim(), 0.0), false};
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < summaries.size(); ++i)
    for (std::size_t j = i + 1; j < summaries.size(); ++j) {
      const MMCVector w = combine(summaries[i], summaries[j], mode);
      for (std::size_t l = 0; l < sum.weights.size(); ++l) sum.weights[l] += w.weights[l];
      ++pairs;
    }
  return DatasetMMC{l1_normalize(sum), mode, pairs};
}

double normalized_msd(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  double total = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l] == 0.0)
      throw DomainError("normalized_msd: reference channel " + std::to_string(l) + " is zero");
    const double r = (x[l] - y[l]) / x[l];
    total += r * r;
  }
  return total / static_cast<double>(x.size());
}

double msd(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  double total = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) total += (x[l] - y[l]) * (x[l] - y[l]);
  return total / static_cast<double>(x.size());
}

double dataset_level_distance(const DatasetMMC &reference, const DatasetMMC &other) {
  return normalized_msd(reference.weights.weights, other.weights.weights);
}

double task_level_distance(const EmbeddingDataset &dataset, const MmcMode &mode_a,
                           const MmcMode &mode_b) {
  require_two_classes(dataset);
  const auto sa = summarize_all(dataset, mode_a);
  const auto sb = summarize_all(dataset, mode_b);
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < sa.size(); ++i)
    for (std::size_t j = i + 1; j < sa.size(); ++j) {
      total += msd(combine(sa[i], sa[j], mode_a).weights, combine(sb[i], sb[j], mode_b).weights);
      ++pairs;
    }
  return total / static_cast<double>(pairs);
}

double image_level_distance(const EmbeddingDataset &dataset, const TransformSpec &a,
                            const TransformSpec &b) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto &cls : dataset.classes()) {
    for (std::size_t r = 0; r < cls.vectors.size(); ++r) {
      try {
        const MMCVector za = l1_normalize({apply_channelwise(cls.vectors[r], a), false});
        const MMCVector zb = l1_normalize({apply_channelwise(cls.vectors[r], b), false});
        total += msd(za.weights, zb.weights);
      } catch (const DomainError &e) {
        throw DomainError("image " + std::to_string(r) + " of class '" + cls.name +
                          "': " + e.what());
      }
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

std::string channel_comparison_csv(const MMCVector &before, const MMCVector &after) {
  if (before.dim() != after.dim()) throw DomainError("channel comparison: dimension mismatch");
  std::string out = "channel,mmc_before,mmc_after\n";
  for (std::size_t l = 0; l < before.dim(); ++l)
    out += std::to_string(l) + "," + format_double(before.weights[l]) + "," +
           format_double(after.weights[l]) + "\n";
  return out;
}

}  // namespace chanlab

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "chanlab/core.hpp"

namespace chanlab {

/// CSV layout: header `label,c0,...,c{d-1}`, one record per line, '.' as the
/// decimal separator, no quoting. Values are written with 17 significant
/// digits.
EmbeddingDataset load_features_csv(const std::filesystem::path &path);
EmbeddingDataset parse_features_csv(const std::string &text);
void save_features_csv(const EmbeddingDataset &dataset, const std::filesystem::path &path);
std::string features_to_csv(const EmbeddingDataset &dataset);

/// Little-endian binary layout:
///   "FSLF" | u16 version=1 | u32 num_classes
///   per class: u16 name_len | name bytes | u32 count
///   u32 d | vectors grouped by class in declared order, each d x float32
EmbeddingDataset load_features_binary(const std::filesystem::path &path);
EmbeddingDataset parse_features_binary(const std::string &bytes);
void save_features_binary(const EmbeddingDataset &dataset, const std::filesystem::path &path);
std::string features_to_binary(const EmbeddingDataset &dataset);

/// Picks the loader from the extension: `.bin`/`.fslf` are binary, anything
/// else is CSV.
EmbeddingDataset load_features(const std::filesystem::path &path);
void save_features(const EmbeddingDataset &dataset, const std::filesystem::path &path);

nlohmann::json report_to_json(const EvalReport &report);
EvalReport report_from_json(const nlohmann::json &doc);
void save_report(const EvalReport &report, const std::filesystem::path &path);
EvalReport load_report(const std::filesystem::path &path);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, const std::string &contents);

}  // namespace chanlab

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "chanlab/core.hpp"

namespace chanlab::test {

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1e-300, std::abs(a), std::abs(b)});
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("chanlab_" + tag + "_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  std::filesystem::path operator/(const std::string &name) const { return path_ / name; }
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline EmbeddingDataset make_dataset(std::size_t dim,
                                     std::vector<std::pair<std::string, std::vector<FeatureVector>>> cls) {
  std::vector<LabeledClass> classes;
  for (auto &[name, vectors] : cls) classes.push_back({name, std::move(vectors)});
  return EmbeddingDataset(dim, std::move(classes));
}

}  // namespace chanlab::test

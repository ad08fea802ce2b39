// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace chanlab {

/// SplitMix64 finaliser (Stafford "mix13" constants).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based 64-bit generator. Output n (n = 1, 2, ...) of the stream
/// with key K is mix64(K + n * 0x9E3779B97F4A7C15), i.e. SplitMix64 seeded
/// with K. Every derived quantity below is specified exactly so that other
/// implementations can reproduce the streams bit for bit:
///
///   uniform01()      = (next() >> 11) * 2^-53
///   below(n)         = next() % n, rejecting draws < (2^64 - n) % n
///   normal()         = sqrt(-2 ln(1 - u1)) * cos(2 pi u2), u1 then u2 uniform01
///
/// Streams for independent work items come from stream_key(seed, index).
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  /// Key of stream `index` under `seed`: mix64(seed ^ mix64(index ^ 0xD1B54A32D192ED03)).
  static constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index ^ 0xD1B54A32D192ED03ULL));
  }

  static CounterRng stream(std::uint64_t seed, std::uint64_t index) {
    return CounterRng(stream_key(seed, index));
  }

  std::uint64_t next() {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::uint64_t below(std::uint64_t n);
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace chanlab

// Copyright 2026 The igdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IGDIFF_RANDOM_HPP_
#define IGDIFF_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

namespace igdiff {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

/// Key of the substream (seed, tag, index). Distinct triples give
/// statistically independent streams.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) noexcept {
  return mix64(mix64(seed + kGolden) ^ mix64(tag * kGolden + mix64(index)));
}

// Counter-based generator: the n-th output is mix64(key + n * golden).
// Satisfies std::uniform_random_bit_generator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  explicit CounterStream(std::uint64_t key) noexcept : key_(key) {}
  CounterStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) noexcept
      : key_(stream_key(seed, tag, index)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGolden); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform on (0, 1] from the top 53 bits.
inline double open_unit(std::uint64_t bits) noexcept {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// Two independent standard normals from one 64-bit key (Box-Muller).
inline std::pair<double, double> gaussian_pair(std::uint64_t key) noexcept {
  const double u1 = open_unit(mix64(key));
  const double u2 = open_unit(mix64(key + kGolden));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace igdiff

#endif  // IGDIFF_RANDOM_HPP_

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

#ifndef IGDIFF_MC_HPP_
#define IGDIFF_MC_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "igdiff/ig.hpp"

namespace igdiff {

struct SimConfig {
  std::size_t n_samples = 100000;
  std::uint64_t seed = 0;
  /// Time step of the path simulator.
  double dt = 1e-4;
  /// Step budget per path; longer paths are censored.
  std::size_t max_steps = 10000000;
  /// Worker threads, 0 = all cores. Results do not depend on this.
  unsigned workers = 0;

  void validate() const;
};

/// Draws per substream block. Block i of X1 uses CounterStream(seed, 1, i)
/// and block i of X2 uses CounterStream(seed, 2, i).
inline constexpr std::size_t kSampleBlock = 4096;

/// n_samples independent draws of X1 - X2.
std::vector<double> sample_diff(const IGParams& p1, const IGParams& p2, const SimConfig& cfg);

struct FirstPassageResult {
  /// First crossing times of the paths that crossed, in path order.
  std::vector<double> times;
  /// Paths that had not crossed after max_steps steps.
  std::size_t censored = 0;
};

/// Euler-Maruyama paths x_{k+1} = x_k + v dt + sqrt(2 D dt) N_k from 0,
/// absorbed at the first grid time with x_k >= d.
///
/// The Brownian increments are built by midpoint refinement inside coarse
/// intervals whose length depends only on the binary mantissa of dt. Runs
/// whose dt differ by a power of two therefore sample the same Brownian
/// path at different resolutions, which makes step-size comparisons free of
/// sampling noise in the path itself.
///
/// Throws ConfigError when d / v > 0.1 * max_steps * dt.
FirstPassageResult first_passage_sim(const PhysicalChannel& c, const SimConfig& cfg);

}  // namespace igdiff

#endif  // IGDIFF_MC_HPP_

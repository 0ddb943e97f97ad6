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

#ifndef IGDIFF_MOMENTS_HPP_
#define IGDIFF_MOMENTS_HPP_

#include <cmath>

namespace igdiff {

// Mean, variance, skewness and excess kurtosis of a scalar law.
struct MomentSet {
  double mean = 0.0;
  double variance = 1.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

// First four cumulants.
struct CumulantSet {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
};

inline MomentSet moments_from_cumulants(const CumulantSet& k) {
  return {k.k1, k.k2, k.k3 / std::pow(k.k2, 1.5), k.k4 / (k.k2 * k.k2)};
}

}  // namespace igdiff

#endif  // IGDIFF_MOMENTS_HPP_

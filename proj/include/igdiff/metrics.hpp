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

#ifndef IGDIFF_METRICS_HPP_
#define IGDIFF_METRICS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "igdiff/ig.hpp"
#include "igdiff/quadrature.hpp"

namespace igdiff {

using Density = std::function<double(double)>;
using Distribution = std::function<double(double)>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct KlOptions {
  /// The divergence integral is restricted to where exact exceeds
  /// floor_ratio times its peak value.
  double floor_ratio = 1e-12;
  /// Both densities must integrate to 1 within this on the support.
  double normalization_tol = 1e-4;
  /// Nodes of the scan that locates the peak and the truncated support.
  std::size_t scan_points = 4001;
};

/// Kullback-Leibler divergence KL(exact || approx) over `support`. Returns
/// a nonnegative value; round-off below zero is reported as 0.
/// Throws SupportMismatch if approx <= 0 where exact is above the floor and
/// DomainError if either density fails the normalization check.
double kl_divergence(const Density& exact, const Density& approx, Interval support, const QuadratureSpec& q = {},
                     const KlOptions& options = {});

enum class CrossoverMethod { exact, nig, asymptotic };

CrossoverMethod parse_crossover_method(std::string_view name);
std::string_view to_string(CrossoverMethod m);

/// Pr(X1 - X2 > t): the probability that a molecule released t later
/// arrives first.
double crossover_probability(const IGParams& p1, const IGParams& p2, double t, CrossoverMethod method,
                             const QuadratureSpec& q = {});

/// Two-sided Kolmogorov-Smirnov statistic sup |F_n - F| of sorted samples.
double ks_distance(std::span<const double> sorted, const Distribution& cdf);
/// Same statistic with cdf_values[i] = F(sorted[i]) supplied by the caller.
double ks_distance(std::span<const double> sorted, std::span<const double> cdf_values);

/// Distribution function at every sorted sample, from the value at the
/// first sample plus 15-point Gauss-Kronrod integrals of the density over
/// the gaps. Intended for densities without a closed-form distribution.
std::vector<double> cdf_along_sorted(std::span<const double> sorted, const Density& pdf, double cdf_first);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of samples against len(inner_edges) + 1 bins of
/// equal model probability, whose interior edges are the model quantiles at
/// 1/k, ..., (k-1)/k.
ChiSquareResult chi_square_equal_probability(std::span<const double> samples, std::span<const double> inner_edges);

}  // namespace igdiff

#endif  // IGDIFF_METRICS_HPP_

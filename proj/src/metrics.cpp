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

#include "igdiff/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "igdiff/diff.hpp"
#include "igdiff/errors.hpp"
#include "igdiff/nig.hpp"

namespace igdiff {
namespace {

void check_normalized(const char* name, double mass, double tol) {
  if (std::abs(mass - 1.0) > tol) {
    std::ostringstream msg;
    msg << "kl_divergence: " << name << " density integrates to " << mass << " on the support";
    throw DomainError(msg.str());
  }
}

}  // namespace

double kl_divergence(const Density& exact, const Density& approx, Interval support, const QuadratureSpec& q,
                     const KlOptions& options) {
  q.validate();
  if (!(support.hi > support.lo) || !std::isfinite(support.lo) || !std::isfinite(support.hi)) {
    throw DomainError("kl_divergence: support must be a finite interval with lo < hi");
  }
  const std::size_t n = std::max<std::size_t>(options.scan_points, 3);
  const double step = (support.hi - support.lo) / static_cast<double>(n - 1);
  std::vector<double> values(n);
  double peak = 0.0;
  std::size_t ipeak = 0;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = exact(support.lo + step * static_cast<double>(i));
    if (values[i] > peak) {
      peak = values[i];
      ipeak = i;
    }
  }
  if (!(peak > 0.0)) throw DomainError("kl_divergence: exact density vanishes on the support");
  const double floor_density = options.floor_ratio * peak;

  std::size_t first = ipeak;
  std::size_t last = ipeak;
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] > floor_density) {
      first = std::min(first, i);
      last = std::max(last, i);
    }
  }
  const double lo = support.lo + step * static_cast<double>(first > 0 ? first - 1 : 0);
  const double hi = support.lo + step * static_cast<double>(std::min(last + 1, n - 1));
  const double mode = support.lo + step * static_cast<double>(ipeak);

  check_normalized("exact", integrate(exact, support.lo, support.hi, q, {lo, mode, hi}), options.normalization_tol);
  check_normalized("approx", integrate(approx, support.lo, support.hi, q, {lo, mode, hi}),
                   options.normalization_tol);

  auto integrand = [&](double x) {
    const double p = exact(x);
    if (!(p > floor_density)) return 0.0;
    const double r = approx(x);
    if (!(r > 0.0)) {
      std::ostringstream msg;
      msg << "kl_divergence: approx density is " << r << " at x=" << x << " where exact is " << p;
      throw SupportMismatch(msg.str());
    }
    return p * std::log(p / r);
  };
  const double kl = integrate(integrand, lo, hi, q, {mode});
  return std::max(kl, 0.0);
}

CrossoverMethod parse_crossover_method(std::string_view name) {
  if (name == "exact") return CrossoverMethod::exact;
  if (name == "nig") return CrossoverMethod::nig;
  if (name == "asymptotic") return CrossoverMethod::asymptotic;
  throw DomainError("unknown crossover method '" + std::string(name) + "'");
}

std::string_view to_string(CrossoverMethod m) {
  switch (m) {
    case CrossoverMethod::exact:
      return "exact";
    case CrossoverMethod::nig:
      return "nig";
    case CrossoverMethod::asymptotic:
      return "asymptotic";
  }
  return "unknown";
}

double crossover_probability(const IGParams& p1, const IGParams& p2, double t, CrossoverMethod method,
                             const QuadratureSpec& q) {
  if (!(t >= 0.0)) throw DomainError("crossover_probability: T must be >= 0");
  switch (method) {
    case CrossoverMethod::exact:
      return conv_tail(p1, p2, t, q);
    case CrossoverMethod::nig:
      return nig_tail(approx_diff(p1, p2), t, Accuracy{q.abs_tol, q.rel_tol});
    case CrossoverMethod::asymptotic:
      return asymptotic_tail(p1, p2, t);
  }
  throw DomainError("crossover_probability: unknown method");
}

double ks_distance(std::span<const double> sorted, std::span<const double> cdf_values) {
  if (sorted.empty()) throw DomainError("ks_distance: no samples");
  if (cdf_values.size() != sorted.size()) throw DomainError("ks_distance: size mismatch");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] < sorted[i - 1]) throw DomainError("ks_distance: samples are not sorted");
    const double f = cdf_values[i];
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double ks_distance(std::span<const double> sorted, const Distribution& cdf) {
  std::vector<double> values(sorted.size());
  std::transform(sorted.begin(), sorted.end(), values.begin(), cdf);
  return ks_distance(sorted, values);
}

std::vector<double> cdf_along_sorted(std::span<const double> sorted, const Density& pdf, double cdf_first) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  std::vector<double> out(sorted.size());
  double acc = cdf_first;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] > sorted[i - 1]) acc += Rule::integrate(pdf, sorted[i - 1], sorted[i], 0);
    out[i] = std::min(acc, 1.0);
  }
  return out;
}

ChiSquareResult chi_square_equal_probability(std::span<const double> samples, std::span<const double> inner_edges) {
  if (samples.empty()) throw DomainError("chi_square_equal_probability: no samples");
  if (inner_edges.empty()) throw DomainError("chi_square_equal_probability: need at least two bins");
  if (!std::is_sorted(inner_edges.begin(), inner_edges.end())) {
    throw DomainError("chi_square_equal_probability: bin edges must be sorted");
  }
  std::vector<std::size_t> counts(inner_edges.size() + 1, 0);
  for (double x : samples) {
    const auto bin = std::upper_bound(inner_edges.begin(), inner_edges.end(), x) - inner_edges.begin();
    ++counts[static_cast<std::size_t>(bin)];
  }
  const double expected = static_cast<double>(samples.size()) / static_cast<double>(counts.size());
  double stat = 0.0;
  for (std::size_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  ChiSquareResult r;
  r.statistic = stat;
  r.dof = counts.size() - 1;
  r.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(static_cast<double>(r.dof)), stat));
  return r;
}

}  // namespace igdiff

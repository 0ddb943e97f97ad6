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

#include "igdiff/special_fn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "igdiff/errors.hpp"

namespace igdiff {
namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;  // ln sqrt(2 pi)
constexpr double kCfTiny = 1e-300;
constexpr int kCfMaxTerms = 5000;

// Modified Lentz evaluation of 1 / (x + a_1 / (x + a_2 / (x + ...))) with
// a_j = j + offset.
double lentz_tail(double x, int offset) {
  double f = x;
  if (f == 0.0) f = kCfTiny;
  double c = f;
  double d = 0.0;
  for (int j = 1; j <= kCfMaxTerms; ++j) {
    const double a = static_cast<double>(j + offset);
    d = x + a * d;
    if (d == 0.0) d = kCfTiny;
    c = x + a / c;
    if (c == 0.0) c = kCfTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

// Thresholds beyond which continued fractions replace erfc-based formulas.
constexpr double kLogTailCfFrom = 20.0;
constexpr double kMillsCfFrom = 5.0;
// K1 switches to its asymptotic series here; the series has converged to
// machine precision well before this point.
constexpr double kBesselAsymptoticFrom = 600.0;

}  // namespace

void Accuracy::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol > 0.0 || rel_tol > 0.0)) {
    throw DomainError("Accuracy: tolerances must be nonnegative with at least one positive");
  }
}

double std_normal_cdf(double x) {
  if (std::isnan(x)) return x;
  return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0);
}

double log_std_normal_pdf(double x) { return -0.5 * x * x - kLogSqrtTwoPi; }

double mills_ratio(double x) {
  if (x >= kMillsCfFrom) {
    // R(x) = 1 / (x + 1/(x + 2/(x + ...)))
    return lentz_tail(x, 0);
  }
  return 0.5 * std::erfc(x * std::numbers::sqrt2 / 2.0) * std::exp(0.5 * x * x + kLogSqrtTwoPi);
}

double mills_ratio_slope(double x) {
  if (x >= kMillsCfFrom) {
    // 1/R(x) - x = 1/(x + 2/(x + 3/(x + ...))), so 1 - xR = R (1/R - x).
    return mills_ratio(x) * lentz_tail(x, 1);
  }
  return 1.0 - x * mills_ratio(x);
}

double log_std_normal_tail(double x) {
  if (std::isnan(x)) return x;
  if (x < -1.0) return std::log1p(-std_normal_cdf(x));
  if (x < kLogTailCfFrom) return std::log(0.5 * std::erfc(x * std::numbers::sqrt2 / 2.0));
  return log_std_normal_pdf(x) + std::log(mills_ratio(x));
}

double bessel_k1(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k1: argument must be positive, got " + std::to_string(x));
  if (x >= kBesselAsymptoticFrom) return std::exp(log_bessel_k1(x));
  return std::cyl_bessel_k(1.0, x);
}

double log_bessel_k1(double x) {
  if (!(x > 0.0)) throw DomainError("log_bessel_k1: argument must be positive, got " + std::to_string(x));
  if (x < 1e-150) return -std::log(x);  // K1(x) = 1/x (1 + O(x^2 ln x))
  if (x < kBesselAsymptoticFrom) return std::log(std::cyl_bessel_k(1.0, x));
  // K_nu(x) ~ sqrt(pi/(2x)) e^{-x} sum_k prod_{j<=k} (4nu^2 - (2j-1)^2) / (j 8x)
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (4.0 - odd * odd) / (k * 8.0 * x);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return -x + 0.5 * std::log(std::numbers::pi / (2.0 * x)) + std::log(sum);
}

}  // namespace igdiff

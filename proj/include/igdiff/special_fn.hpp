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

#ifndef IGDIFF_SPECIAL_FN_HPP_
#define IGDIFF_SPECIAL_FN_HPP_

namespace igdiff {

// Target accuracy of a numerically approximated quantity. At least one of
// the two tolerances must be strictly positive.
struct Accuracy {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;

  void validate() const;
};

/// Standard normal distribution function. Relative error below 1e-14 for
/// |x| <= 8.
double std_normal_cdf(double x);

/// ln(1 - std_normal_cdf(x)), finite for all x up to ~1e154.
///
/// x < -1 uses log1p of the lower tail, moderate x the complementary error
/// function and x >= 20 the Mills-ratio continued fraction, so the upper
/// tail never underflows to -inf in the range of interest.
double log_std_normal_tail(double x);

double log_std_normal_pdf(double x);

/// Mills ratio R(x) = (1 - Phi(x)) / phi(x). Valid for x >= -37 (beyond that
/// 1/phi overflows).
double mills_ratio(double x);

/// 1 - x R(x), evaluated without cancellation for large x. This is the
/// derivative -R'(x) and is strictly positive.
double mills_ratio_slope(double x);

/// Modified Bessel function of the second kind, order one. Throws
/// DomainError for x <= 0. Relative error below 1e-12 on [1e-6, 700].
double bessel_k1(double x);

/// ln K1(x); finite up to x ~ 1e300. Uses the large-argument asymptotic
/// series for x >= 600.
double log_bessel_k1(double x);

}  // namespace igdiff

#endif  // IGDIFF_SPECIAL_FN_HPP_

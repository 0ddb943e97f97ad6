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

#ifndef IGDIFF_DIFF_HPP_
#define IGDIFF_DIFF_HPP_

#include "igdiff/ig.hpp"
#include "igdiff/quadrature.hpp"

namespace igdiff {

// Law of Z = X1 - X2 for independent X1 ~ IG(p1), X2 ~ IG(p2).

/// Density of Z, the convolution integral of f1(z + w) f2(w) over w > 0
/// evaluated in the log domain on w = e^s.
double conv_pdf(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q = {});
double conv_log_pdf(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q = {});

/// Pr(Z > z) = integral of f2(w) * ig_tail(p1, w + z) over w > 0. Below the
/// mean of Z the complement of the mirrored tail is returned, so both the
/// tail and the distribution function keep full relative accuracy.
double conv_tail(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q = {});
double conv_log_tail(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q = {});
/// Pr(Z <= z)
double conv_cdf(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q = {});

/// Smallest z with conv_cdf(z) >= prob, for prob in (0, 1).
double conv_quantile(const IGParams& p1, const IGParams& p2, double prob, const QuadratureSpec& q = {});

/// Large-z tail ig_tail(p1, z) * ig_mgf(p2, -b1^2 / 2). Defined for z >= 0;
/// at z = 0 it equals tail_floor. Throws DomainError for z < 0.
double asymptotic_tail(const IGParams& p1, const IGParams& p2, double z);
double asymptotic_log_tail(const IGParams& p1, const IGParams& p2, double z);

struct TailFloor {
  double value = 0.0;  // 0 when below the double range
  double log = 0.0;
};

/// ig_mgf(p2, -b1^2 / 2), the limit of asymptotic_tail as z -> 0+.
TailFloor tail_floor(const IGParams& p1, const IGParams& p2);

/// Earlier tail approximation for equal parameters (a, b):
///   (2 / b^2) exp(-(sqrt(2) - 1) a b) ig_pdf((a, b), z),
/// with the density evaluated at z. Zero for z <= 0.
double soa_tail(double a, double b, double z);
double soa_log_tail(double a, double b, double z);

}  // namespace igdiff

#endif  // IGDIFF_DIFF_HPP_

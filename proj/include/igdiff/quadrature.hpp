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

#ifndef IGDIFF_QUADRATURE_HPP_
#define IGDIFF_QUADRATURE_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>

namespace igdiff {

// Tolerances and refinement budget for adaptive Gauss-Kronrod integration.
// max_refinements is the maximum bisection depth of each panel.
struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  int max_refinements = 20;

  void validate() const;
};

// Nonnegative quantity carried by its natural logarithm. Values below
// kUnderflow are reported as underflowed instead of being rounded to 0, so
// ratios of deep-tail probabilities stay meaningful.
class LogValue {
 public:
  static constexpr double kUnderflow = 1e-300;

  LogValue() = default;
  static LogValue from_log(double log_value) { return LogValue(log_value); }
  static LogValue from_linear(double value) {
    return LogValue(value > 0.0 ? std::log(value) : -std::numeric_limits<double>::infinity());
  }
  static LogValue zero() { return LogValue(-std::numeric_limits<double>::infinity()); }

  double log() const { return log_; }
  double log10() const { return log_ / std::numbers::ln10; }
  bool underflowed() const { return log_ < kLogUnderflow; }
  /// Linear value, 0 when underflowed.
  double value() const { return underflowed() ? 0.0 : std::exp(log_); }

  friend double ratio(const LogValue& num, const LogValue& den) { return std::exp(num.log_ - den.log_); }

 private:
  explicit LogValue(double log_value) : log_(log_value) {}

  static constexpr double kLogUnderflow = -690.7755278982137;  // ln(1e-300)
  double log_ = -std::numeric_limits<double>::infinity();
};

struct LogIntegral {
  double log_value = -std::numeric_limits<double>::infinity();
  double rel_error = 0.0;
};

using LogIntegrand = std::function<double(double)>;

/// Integrates exp(log_integrand(s)) over [lo, hi].
///
/// The integrand is scanned on `grid_points` equispaced nodes to locate its
/// maximum L, which is then polished with Brent's method. Where the log
/// integrand stays below L - 80 the contribution is dropped (relative size
/// < 1e-34). exp(h - L) is integrated with adaptive Gauss-Kronrod (31
/// points) on both sides of the peak, so the result keeps its relative
/// accuracy even when exp(L) is far below the double range.
///
/// Throws AccuracyNotReached when the error estimate exceeds
/// max(abs_tol, rel_tol * |I|) after the refinement budget is spent.
LogIntegral integrate_exp(const LogIntegrand& log_integrand, double lo, double hi, const QuadratureSpec& q,
                          std::size_t grid_points = 1024);

/// Adaptive Gauss-Kronrod on a finite interval. The error estimate must not
/// exceed max(abs_tol, rel_tol * integral of |f|), so integrands that change
/// sign are judged against their magnitude rather than against a small
/// cancelled total. `breaks` are optional interior split points.
double integrate(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& q,
                 std::initializer_list<double> breaks = {});

}  // namespace igdiff

#endif  // IGDIFF_QUADRATURE_HPP_

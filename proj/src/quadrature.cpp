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

#include "igdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "igdiff/errors.hpp"

namespace igdiff {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

// Contributions below exp(-kTruncation) of the peak are dropped.
constexpr double kTruncation = 80.0;
// Tolerance handed to the panel integrator when only abs_tol is set.
constexpr double kFallbackRelTol = 1e-14;

struct Panel {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

template <class F>
Panel gk_panel(const F& f, double a, double b, int depth, double tol) {
  if (!(b > a)) return {};
  double error = 0.0;
  double l1 = 0.0;
  const double value = Rule::integrate(f, a, b, static_cast<unsigned>(depth), tol, &error, &l1);
  return {value, error, l1};
}

[[noreturn]] void fail(const char* where, double estimate, double error) {
  std::ostringstream msg;
  msg << where << ": quadrature tolerance not reached (estimate " << estimate << ", error " << error << ")";
  throw AccuracyNotReached(msg.str(), estimate, error);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol + rel_tol > 0.0)) {
    throw DomainError("QuadratureSpec: tolerances must be nonnegative with a positive sum");
  }
  if (max_refinements < 1) throw DomainError("QuadratureSpec: max_refinements must be >= 1");
}

LogIntegral integrate_exp(const LogIntegrand& log_integrand, double lo, double hi, const QuadratureSpec& q,
                          std::size_t grid_points) {
  q.validate();
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (!(hi > lo)) return {};
  grid_points = std::max<std::size_t>(grid_points, 3);

  auto h = [&](double s) {
    const double v = log_integrand(s);
    return std::isnan(v) ? kNegInf : v;
  };

  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  std::vector<double> values(grid_points);
  std::size_t imax = 0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    values[i] = h(lo + step * static_cast<double>(i));
    if (values[i] > values[imax]) imax = i;
  }
  double peak_log = values[imax];
  if (peak_log == kNegInf) return {};

  double peak = lo + step * static_cast<double>(imax);
  if (imax > 0 && imax + 1 < grid_points) {
    const auto [s_best, neg_best] = boost::math::tools::brent_find_minima(
        [&](double s) { return -h(s); }, peak - step, peak + step, 40);
    if (-neg_best > peak_log) {
      peak_log = -neg_best;
      peak = s_best;
    }
  }

  std::size_t first = imax;
  std::size_t last = imax;
  for (std::size_t i = 0; i < grid_points; ++i) {
    if (values[i] >= peak_log - kTruncation) {
      first = std::min(first, i);
      last = std::max(last, i);
    }
  }
  const double a = lo + step * static_cast<double>(first > 0 ? first - 1 : 0);
  const double b = lo + step * static_cast<double>(std::min(last + 1, grid_points - 1));
  peak = std::clamp(peak, a, b);

  auto scaled = [&](double s) { return std::exp(h(s) - peak_log); };
  const double tol = q.rel_tol > 0.0 ? q.rel_tol : kFallbackRelTol;
  const Panel left = gk_panel(scaled, a, peak, q.max_refinements, tol);
  const Panel right = gk_panel(scaled, peak, b, q.max_refinements, tol);
  const double total = left.value + right.value;
  const double error = left.error + right.error;

  const double allowed = std::max(q.abs_tol * std::exp(-peak_log), q.rel_tol * std::abs(total));
  if (!(error <= allowed)) fail("integrate_exp", std::exp(peak_log) * total, std::exp(peak_log) * error);
  if (!(total > 0.0)) return {};
  return {peak_log + std::log(total), error / total};
}

double integrate(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& q,
                 std::initializer_list<double> breaks) {
  q.validate();
  std::vector<double> knots{lo};
  for (double x : breaks) {
    if (x > lo && x < hi) knots.push_back(x);
  }
  knots.push_back(hi);
  std::sort(knots.begin() + 1, knots.end() - 1);

  const double tol = q.rel_tol > 0.0 ? q.rel_tol : kFallbackRelTol;
  double total = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const Panel p = gk_panel(f, knots[i], knots[i + 1], q.max_refinements, tol);
    total += p.value;
    error += p.error;
    l1 += p.l1;
  }
  if (!(error <= std::max(q.abs_tol, q.rel_tol * l1))) fail("integrate", total, error);
  return total;
}

}  // namespace igdiff

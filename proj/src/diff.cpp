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

#include "igdiff/diff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "igdiff/errors.hpp"
#include "igdiff/nig.hpp"

namespace igdiff {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Half-width of an IG window in units of the standardized variable
// b sqrt(x) - a / sqrt(x); exp(-kWindow^2 / 2) is far below the truncation
// threshold of integrate_exp.
constexpr double kWindow = 30.0;
constexpr std::size_t kGridPoints = 2048;

struct Window {
  double lo;
  double hi;
};

Window ig_window(double a, double b) {
  const double root = std::sqrt(kWindow * kWindow + 4.0 * a * b);
  const double lo = 2.0 * a / (kWindow + root);
  const double hi = (kWindow + root) / (2.0 * b);
  return {lo * lo, hi * hi};
}

// Range of w = X2 carrying the mass of f2(w) g(w + z), where g is either f1
// or the tail of X1.
Window w_window(const IGParams& p1, const IGParams& p2, double z) {
  const Window own = ig_window(p2.a(), p2.b());
  const Window tilted = ig_window(p2.a(), std::hypot(p2.b(), p1.b()));
  Window w{std::min(own.lo, tilted.lo), std::max(own.hi, tilted.hi)};
  const Window first = ig_window(p1.a(), p1.b());
  if (first.lo - z > 0.0) w.lo = std::min(w.lo, first.lo - z);
  if (first.hi - z > 0.0) w.hi = std::max(w.hi, first.hi - z);
  return {w.lo * 1e-2, w.hi * 2.0};
}

double log_pdf_nonneg(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q) {
  const Window w = w_window(p1, p2, z);
  auto integrand = [&](double s) {
    const double x2 = std::exp(s);
    return ig_log_pdf(p1, z + x2) + ig_log_pdf(p2, x2) + s;
  };
  return integrate_exp(integrand, std::log(w.lo), std::log(w.hi), q, kGridPoints).log_value;
}

double log_tail_direct(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q) {
  const Window w = w_window(p1, p2, z);
  auto integrand = [&](double s) {
    const double x2 = std::exp(s);
    return ig_log_pdf(p2, x2) + ig_log_tail(p1, z + x2) + s;
  };
  return integrate_exp(integrand, std::log(w.lo), std::log(w.hi), q, kGridPoints).log_value;
}

}  // namespace

double conv_log_pdf(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q) {
  q.validate();
  if (std::isnan(z)) return z;
  if (std::isinf(z)) return kNegInf;
  return z >= 0.0 ? log_pdf_nonneg(p1, p2, z, q) : log_pdf_nonneg(p2, p1, -z, q);
}

double conv_pdf(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q) {
  return std::exp(conv_log_pdf(p1, p2, z, q));
}

double conv_log_tail(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q) {
  q.validate();
  if (std::isnan(z)) return z;
  if (z == std::numeric_limits<double>::infinity()) return kNegInf;
  if (z == -std::numeric_limits<double>::infinity()) return 0.0;
  if (z >= p1.mean() - p2.mean()) return log_tail_direct(p1, p2, z, q);
  return std::log1p(-std::exp(log_tail_direct(p2, p1, -z, q)));
}

double conv_tail(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q) {
  return std::exp(conv_log_tail(p1, p2, z, q));
}

double conv_cdf(const IGParams& p1, const IGParams& p2, double z, const QuadratureSpec& q) {
  q.validate();
  if (std::isnan(z)) return z;
  // Pr(X1 - X2 <= z) = Pr(X2 - X1 >= -z)
  return conv_tail(p2, p1, -z, q);
}

double conv_quantile(const IGParams& p1, const IGParams& p2, double prob, const QuadratureSpec& q) {
  if (!(prob > 0.0 && prob < 1.0)) throw DomainError("conv_quantile: prob must lie in (0, 1)");
  const CumulantSet k = diff_cumulants(p1, p2);
  const double sd = std::sqrt(k.k2);
  auto excess = [&](double z) { return conv_cdf(p1, p2, z, q) - prob; };

  double lo = k.k1 - sd;
  double hi = k.k1 + sd;
  for (double step = sd; excess(lo) > 0.0; step *= 2.0) lo -= step;
  for (double step = sd; excess(hi) < 0.0; step *= 2.0) hi += step;

  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      excess, lo, hi, boost::math::tools::eps_tolerance<double>(48), iterations);
  return 0.5 * (a + b);
}

double asymptotic_log_tail(const IGParams& p1, const IGParams& p2, double z) {
  if (!(z >= 0.0)) {
    std::ostringstream msg;
    msg << "asymptotic_tail: z must be >= 0 (z=" << z << ")";
    throw DomainError(msg.str());
  }
  return ig_log_tail(p1, z) + tail_floor(p1, p2).log;
}

double asymptotic_tail(const IGParams& p1, const IGParams& p2, double z) {
  return std::exp(asymptotic_log_tail(p1, p2, z));
}

TailFloor tail_floor(const IGParams& p1, const IGParams& p2) {
  const double log_floor = ig_log_mgf(p2, -0.5 * p1.b() * p1.b());
  return {std::exp(log_floor), log_floor};
}

double soa_log_tail(double a, double b, double z) {
  const IGParams p(a, b);
  if (!(z > 0.0)) return kNegInf;
  return std::log(2.0 / (b * b)) - (std::numbers::sqrt2 - 1.0) * a * b + ig_log_pdf(p, z);
}

double soa_tail(double a, double b, double z) { return std::exp(soa_log_tail(a, b, z)); }

}  // namespace igdiff

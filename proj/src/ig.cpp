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

#include "igdiff/ig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "igdiff/errors.hpp"
#include "igdiff/special_fn.hpp"

namespace igdiff {
namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

// R(u) - R(v) for u < v. When the two arguments are close the difference is
// the integral of -R' = 1 - tR(t) over [u, v], which has no cancellation.
double mills_gap(double u, double v) {
  if (v - u > 0.5 * std::max(std::abs(u), 1.0)) return mills_ratio(u) - mills_ratio(v);
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      [](double t) { return mills_ratio_slope(t); }, u, v, 4, 1e-13, &error);
}

}  // namespace

IGParams::IGParams(double a, double b) : a_(a), b_(b) {
  if (!positive_finite(a) || !positive_finite(b)) {
    std::ostringstream msg;
    msg << "IGParams: a and b must be positive and finite (a=" << a << ", b=" << b << ")";
    throw DomainError(msg.str());
  }
}

double IGParams::mode() const noexcept {
  // positive root of b^2 x^2 + 3x - a^2 = 0
  const double ab = a_ * b_;
  return 2.0 * a_ * a_ / (3.0 + std::sqrt(9.0 + 4.0 * ab * ab));
}

PhysicalChannel::PhysicalChannel(double distance, double velocity, double diffusion)
    : d_(distance), v_(velocity), diff_(diffusion) {
  if (!positive_finite(distance) || !positive_finite(velocity) || !positive_finite(diffusion)) {
    throw DomainError("PhysicalChannel: distance, velocity and diffusion must be positive and finite");
  }
}

double ig_log_pdf(const IGParams& p, double x) {
  if (!(x > 0.0) || std::isinf(x)) return -std::numeric_limits<double>::infinity();
  // ab - (a^2/x + b^2 x)/2 == -u^2/2 with u = b sqrt(x) - a/sqrt(x)
  const double s = std::sqrt(x);
  const double u = p.b() * s - p.a() / s;
  return std::log(p.a()) - kLogSqrtTwoPi - 1.5 * std::log(x) - 0.5 * u * u;
}

double ig_pdf(const IGParams& p, double x) {
  if (!(x > 0.0)) return 0.0;
  return std::exp(ig_log_pdf(p, x));
}

double ig_cdf(const IGParams& p, double x) {
  if (std::isnan(x)) return x;
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double s = std::sqrt(x);
  const double u = p.b() * s - p.a() / s;
  const double v = p.b() * s + p.a() / s;
  const double reflected = std::exp(2.0 * p.a() * p.b() + log_std_normal_tail(v));
  return std::min(1.0, std_normal_cdf(u) + reflected);
}

double ig_log_tail(const IGParams& p, double x) {
  if (std::isnan(x)) return x;
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
  const double s = std::sqrt(x);
  const double u = p.b() * s - p.a() / s;
  const double v = p.b() * s + p.a() / s;
  if (u < -5.0) {
    // bulk to the right of x: Q(u) is near one and the reflected term small
    const double reflected = std::exp(2.0 * p.a() * p.b() + log_std_normal_tail(v));
    return std::log(std_normal_cdf(-u) - reflected);
  }
  // e^{2ab} phi(v) == phi(u), hence 1 - F = phi(u) (R(u) - R(v))
  return log_std_normal_pdf(u) + std::log(mills_gap(u, v));
}

double ig_tail(const IGParams& p, double x) { return std::exp(ig_log_tail(p, x)); }

double ig_log_mgf(const IGParams& p, double t) {
  const double b2 = p.b() * p.b();
  if (std::isnan(t) || t > 0.5 * b2) {
    std::ostringstream msg;
    msg << "ig_mgf: t=" << t << " exceeds b^2/2=" << 0.5 * b2 << " where the MGF diverges";
    throw DomainError(msg.str());
  }
  if (std::isinf(t)) return -std::numeric_limits<double>::infinity();
  // a (b - sqrt(b^2 - 2t)) rationalised; exact zero at t = 0
  return p.a() * 2.0 * t / (p.b() + std::sqrt(b2 - 2.0 * t));
}

double ig_mgf(const IGParams& p, double t) { return std::exp(ig_log_mgf(p, t)); }

CumulantSet ig_cumulants(const IGParams& p) {
  const double a = p.a();
  const double b = p.b();
  const double b2 = b * b;
  const double k1 = a / b;
  const double k2 = k1 / b2;
  return {k1, k2, 3.0 * k2 / b2, 15.0 * k2 / (b2 * b2)};
}

IGParams physical_to_ig(const PhysicalChannel& c) {
  const double scale = std::sqrt(2.0 * c.diffusion());
  return {c.distance() / scale, c.velocity() / scale};
}

}  // namespace igdiff

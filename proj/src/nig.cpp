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

#include "igdiff/nig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "igdiff/errors.hpp"
#include "igdiff/quadrature.hpp"

namespace igdiff {
namespace {

// Right tail of a law whose bulk lies at or left of y.
double log_right_tail(const NIGParams& p, double y, const Accuracy& acc) {
  const MomentSet m = nig_moments(p);
  const double sd = std::sqrt(m.variance);
  const double decay = p.alpha() - p.beta();
  const double scale = std::min(sd, 1.0 / decay);
  const double lo = std::log(scale) - 40.0;
  const double hi = std::log(std::max(m.mean - y, 0.0) + 50.0 * sd + 120.0 / decay) + 1.0;
  const QuadratureSpec q{acc.abs_tol, acc.rel_tol, QuadratureSpec{}.max_refinements};
  return integrate_exp([&](double s) { return nig_log_pdf(p, y + std::exp(s)) + s; }, lo, hi, q).log_value;
}

}  // namespace

NIGParams::NIGParams(double alpha, double beta, double mu, double delta)
    : alpha_(alpha), beta_(beta), mu_(mu), delta_(delta) {
  const bool ok = alpha > 0.0 && delta > 0.0 && std::abs(beta) < alpha && std::isfinite(alpha) &&
                  std::isfinite(delta) && std::isfinite(mu);
  if (!ok) {
    std::ostringstream msg;
    msg << "NIGParams: need alpha > 0, delta > 0, |beta| < alpha (alpha=" << alpha << ", beta=" << beta
        << ", mu=" << mu << ", delta=" << delta << ")";
    throw DomainError(msg.str());
  }
}

NIGParams mirrored(const NIGParams& p) { return {p.alpha(), -p.beta(), -p.mu(), p.delta()}; }

double nig_log_pdf(const NIGParams& p, double y) {
  if (std::isnan(y)) return y;
  if (std::isinf(y)) return -std::numeric_limits<double>::infinity();
  const double dy = y - p.mu();
  const double r = std::hypot(p.delta(), dy);
  return std::log(p.alpha() * p.delta() / std::numbers::pi) + p.delta() * p.gamma() - p.beta() * dy +
         log_bessel_k1(p.alpha() * r) - std::log(r);
}

double nig_pdf(const NIGParams& p, double y) { return std::exp(nig_log_pdf(p, y)); }

double nig_log_tail(const NIGParams& p, double y, const Accuracy& acc) {
  acc.validate();
  if (std::isnan(y)) return y;
  if (y == std::numeric_limits<double>::infinity()) return -std::numeric_limits<double>::infinity();
  if (y == -std::numeric_limits<double>::infinity()) return 0.0;
  const double mean = nig_moments(p).mean;
  if (y >= mean) return log_right_tail(p, y, acc);
  const double lower = std::exp(log_right_tail(mirrored(p), -y, acc));
  return std::log1p(-lower);
}

double nig_tail(const NIGParams& p, double y, const Accuracy& acc) { return std::exp(nig_log_tail(p, y, acc)); }

MomentSet nig_moments(const NIGParams& p) {
  const double a = p.alpha();
  const double b = p.beta();
  const double d = p.delta();
  const double g = p.gamma();
  return {
      p.mu() + d * b / g,
      d * a * a / (g * g * g),
      3.0 * b / (a * std::sqrt(d * g)),
      3.0 * (1.0 + 4.0 * b * b / (a * a)) / (d * g),
  };
}

NIGParams fit_from_moments(const MomentSet& m) {
  const double mean = m.mean;
  const double var = m.variance;
  const double skew = m.skewness;
  const double kurt = m.excess_kurtosis;
  if (!(var > 0.0) || !std::isfinite(var)) throw InfeasibleMoments("fit_from_moments: variance must be positive");
  if (!(kurt > 0.0) || !std::isfinite(kurt)) {
    throw InfeasibleMoments("fit_from_moments: excess kurtosis must be positive");
  }
  const double sd = std::sqrt(var);
  if (std::abs(skew) < kSymmetricSkewness) {
    const double alpha = std::sqrt(3.0 / (kurt * var));
    return {alpha, 0.0, mean, var * alpha};
  }
  const double rho = 3.0 * kurt / (skew * skew) - 4.0;
  if (!(rho > 1.0)) {
    std::ostringstream msg;
    msg << "fit_from_moments: rho = 3K/S^2 - 4 = " << rho << " <= 1 (need 3K > 5S^2)";
    throw InfeasibleMoments(msg.str());
  }
  const double abs_skew = std::abs(skew);
  return {
      3.0 * std::sqrt(rho) / ((rho - 1.0) * sd * abs_skew),
      3.0 / ((rho - 1.0) * sd * skew),
      mean - 3.0 * sd / (rho * skew),
      3.0 * std::sqrt(rho - 1.0) * sd / (rho * abs_skew),
  };
}

CumulantSet diff_cumulants(const IGParams& p1, const IGParams& p2) {
  const CumulantSet c1 = ig_cumulants(p1);
  const CumulantSet c2 = ig_cumulants(p2);
  return {c1.k1 - c2.k1, c1.k2 + c2.k2, c1.k3 - c2.k3, c1.k4 + c2.k4};
}

MomentSet moments_of_diff(const IGParams& p1, const IGParams& p2) {
  return moments_from_cumulants(diff_cumulants(p1, p2));
}

NIGParams approx_diff(const IGParams& p1, const IGParams& p2) { return fit_from_moments(moments_of_diff(p1, p2)); }

NIGParams usecase1_params(double a, double b) {
  const IGParams p(a, b);  // validates
  const double root5 = std::sqrt(5.0);
  return {p.b() * p.b() / root5, 0.0, 0.0, 2.0 / root5 * p.a() / p.b()};
}

NIGParams usecase2_params(double a1, double a2, double c) {
  const IGParams check1(a1, c);
  const IGParams check2(a2, c);
  if (a1 == a2) throw DegenerateInput("usecase2_params: a1 == a2 makes tau vanish; use usecase1_params");

  const double s1 = a1 * a1;
  const double s2 = a2 * a2;
  const double diff = s1 - s2;
  const double poly = s1 * s1 + 3.0 * s1 * s2 + s2 * s2;
  const double inv_sum = 1.0 / s1 + 1.0 / s2;
  const double tau = (1.0 / (s1 * s1) - 1.0 / (s2 * s2)) / (std::pow(inv_sum, 1.5) * std::sqrt(c));
  const double spread = std::sqrt(inv_sum / (c * c * c));

  const double alpha = diff * diff * std::sqrt(poly / (diff * diff)) / (5.0 * s1 * s2 * spread * std::abs(tau));
  const double beta = -diff * c * c / 5.0;
  const double mu = (s1 * s1 - s2 * s2) / (poly * c);
  const double delta =
      std::sqrt(5.0) * s1 * s2 * spread / (std::sqrt(s1 * s2 / (diff * diff)) * poly * std::abs(tau));
  return {alpha, beta, mu, delta};
}

}  // namespace igdiff

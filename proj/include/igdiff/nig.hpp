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

#ifndef IGDIFF_NIG_HPP_
#define IGDIFF_NIG_HPP_

#include <cmath>
#include <random>

#include "igdiff/ig.hpp"
#include "igdiff/moments.hpp"
#include "igdiff/special_fn.hpp"

namespace igdiff {

// Normal inverse Gaussian law with tail heaviness alpha, asymmetry beta,
// location mu and scale delta. Invariants: alpha > 0, delta > 0,
// |beta| < alpha.
class NIGParams {
 public:
  NIGParams(double alpha, double beta, double mu, double delta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double mu() const noexcept { return mu_; }
  double delta() const noexcept { return delta_; }
  /// sqrt(alpha^2 - beta^2)
  double gamma() const noexcept { return std::sqrt((alpha_ - beta_) * (alpha_ + beta_)); }

 private:
  double alpha_;
  double beta_;
  double mu_;
  double delta_;
};

/// Parameters of the law of -Y when Y has parameters p.
NIGParams mirrored(const NIGParams& p);

double nig_pdf(const NIGParams& p, double y);
double nig_log_pdf(const NIGParams& p, double y);

/// Pr(Y > y) by adaptive quadrature. Integration always runs to the right
/// of the mean; for y below the mean the complement of the mirrored law's
/// tail is returned.
double nig_tail(const NIGParams& p, double y, const Accuracy& acc = {});
double nig_log_tail(const NIGParams& p, double y, const Accuracy& acc = {});

MomentSet nig_moments(const NIGParams& p);

/// Skewness magnitudes below this use the exact symmetric-limit fit.
inline constexpr double kSymmetricSkewness = 1e-8;

/// Four-moment fit. With rho = 3K/S^2 - 4:
///   alpha = 3 sqrt(rho) / ((rho - 1) sqrt(V) |S|)
///   beta  = 3 / ((rho - 1) sqrt(V) S)
///   mu    = M - 3 sqrt(V) / (rho S)
///   delta = 3 sqrt(rho - 1) sqrt(V) / (rho |S|)
/// and, for |S| < kSymmetricSkewness, the S -> 0 limit beta = 0, mu = M,
/// alpha = sqrt(3 / (K V)), delta = V alpha.
/// Throws InfeasibleMoments when V <= 0, K <= 0 or rho <= 1.
NIGParams fit_from_moments(const MomentSet& m);

/// kappa_n(X1 - X2) = kappa_n(X1) + (-1)^n kappa_n(X2)
CumulantSet diff_cumulants(const IGParams& p1, const IGParams& p2);
MomentSet moments_of_diff(const IGParams& p1, const IGParams& p2);

/// NIG approximation of X1 - X2 by moment matching. This is the canonical
/// route for arbitrary parameter pairs.
NIGParams approx_diff(const IGParams& p1, const IGParams& p2);

/// Closed form for a1 = a2 = a, b1 = b2 = b.
NIGParams usecase1_params(double a, double b);

/// Closed form for b1/a1 = b2/a2 = c. Throws DegenerateInput when a1 == a2
/// (the asymmetry parameter tau vanishes; use usecase1_params).
NIGParams usecase2_params(double a1, double a2, double c);

/// Exact draw from the normal variance-mean mixture mu + beta W + sqrt(W) N
/// with W inverse Gaussian of mean delta/gamma and shape delta^2.
template <std::uniform_random_bit_generator G>
double nig_sample(const NIGParams& p, G& gen) {
  const double w = ig_sample(IGParams(p.delta(), p.gamma()), gen);
  std::normal_distribution<double> normal;
  return p.mu() + p.beta() * w + std::sqrt(w) * normal(gen);
}

}  // namespace igdiff

#endif  // IGDIFF_NIG_HPP_

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

#ifndef IGDIFF_IG_HPP_
#define IGDIFF_IG_HPP_

#include <cmath>
#include <random>

#include "igdiff/moments.hpp"

namespace igdiff {

// Inverse Gaussian first-hitting-time law with density
//   a / sqrt(2 pi) e^{ab} x^{-3/2} exp(-(a^2/x + b^2 x) / 2),  x > 0.
// Mean a/b, shape a^2.
class IGParams {
 public:
  IGParams(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double mean() const noexcept { return a_ / b_; }
  double mode() const noexcept;

  friend bool operator==(const IGParams&, const IGParams&) = default;

 private:
  double a_;
  double b_;
};

// One-dimensional fluid channel: transmitter-receiver distance d [m], flow
// velocity v [m/s], diffusion coefficient D [m^2/s].
class PhysicalChannel {
 public:
  PhysicalChannel(double distance, double velocity, double diffusion);

  double distance() const noexcept { return d_; }
  double velocity() const noexcept { return v_; }
  double diffusion() const noexcept { return diff_; }

 private:
  double d_;
  double v_;
  double diff_;
};

double ig_pdf(const IGParams& p, double x);
/// ln ig_pdf, -inf outside the support.
double ig_log_pdf(const IGParams& p, double x);

/// Distribution function Phi(b sqrt(x) - a/sqrt(x)) + e^{2ab} Phi(-b sqrt(x) - a/sqrt(x)).
/// The second product is formed in the log domain so that e^{2ab} never
/// overflows.
double ig_cdf(const IGParams& p, double x);

/// 1 - ig_cdf, computed directly so that tails down to 1e-300 keep at least
/// ten significant digits.
double ig_tail(const IGParams& p, double x);
double ig_log_tail(const IGParams& p, double x);

/// Moment-generating function exp(ab - a sqrt(b^2 - 2t)). Throws DomainError
/// for t > b^2/2.
double ig_mgf(const IGParams& p, double t);
double ig_log_mgf(const IGParams& p, double t);

/// (a/b, a/b^3, 3a/b^5, 15a/b^7)
CumulantSet ig_cumulants(const IGParams& p);

/// Exact draw by the Michael-Schucany-Haas transformation with multiple
/// roots. The smaller root is formed as mean^2 / larger root, which avoids
/// the cancellation of the textbook expression when mean >> shape.
template <std::uniform_random_bit_generator G>
double ig_sample(const IGParams& p, G& gen) {
  const double m = p.mean();
  const double shape = p.a() * p.a();
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;
  const double n = normal(gen);
  const double y = n * n;
  const double my = m * y;
  const double larger = m + m * my / (2.0 * shape) + m / (2.0 * shape) * std::sqrt(4.0 * shape * my + my * my);
  const double smaller = m * m / larger;
  return uniform(gen) * (m + smaller) <= m ? smaller : larger;
}

/// a = d / sqrt(2D), b = v / sqrt(2D)
IGParams physical_to_ig(const PhysicalChannel& c);

}  // namespace igdiff

#endif  // IGDIFF_IG_HPP_

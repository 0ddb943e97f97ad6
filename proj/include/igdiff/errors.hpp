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

#ifndef IGDIFF_ERRORS_HPP_
#define IGDIFF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace igdiff {

// Argument outside the mathematical domain of an operation (K1 at x <= 0,
// an MGF evaluated past its abscissa of convergence, invalid parameters).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Adaptive quadrature exhausted its refinement budget without meeting the
// requested tolerance.
class AccuracyNotReached : public std::runtime_error {
 public:
  AccuracyNotReached(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

// Moment set that no NIG law can reproduce (rho <= 1, nonpositive variance
// or kurtosis).
class InfeasibleMoments : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Closed form evaluated at a parameter combination where it is singular.
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The approximating density vanishes where the reference density carries
// mass, so the divergence is infinite.
class SupportMismatch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace igdiff

#endif  // IGDIFF_ERRORS_HPP_

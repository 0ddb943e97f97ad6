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
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include "igdiff/errors.hpp"
#include "igdiff/mc.hpp"
#include "igdiff/metrics.hpp"
#include "igdiff/nig.hpp"
#include "support/oracles.hpp"

namespace igdiff {
namespace {

using oracle::rel_err;

// Pr(X1 - X2 > z) = integral of f1(z + w) F2(w) over w > 0 for z >= 0: a
// different factorisation from the library's, through ig_cdf.
double tail_oracle(const IGParams& p1, const IGParams& p2, double z) {
  double error = 0.0;
  return boost::math::quadrature::exp_sinh<double>().integrate(
      [&](double w) { return ig_pdf(p1, z + w) * ig_cdf(p2, w); }, 1e-13, &error);
}

double conv_mass(const IGParams& p1, const IGParams& p2) {
  const CumulantSet k = diff_cumulants(p1, p2);
  const double sd = std::sqrt(k.k2);
  const double lo = k.k1 - 30.0 * sd - 80.0 / (p2.b() * p2.b());
  const double hi = k.k1 + 30.0 * sd + 80.0 / (p1.b() * p1.b());
  return integrate([&](double z) { return conv_pdf(p1, p2, z); }, lo, hi, {},
                   {k.k1 - 3.0 * sd, k.k1 - sd, k.k1, k.k1 + sd, k.k1 + 3.0 * sd});
}

TEST(ConvPdf, SymmetricForEqualPairs) {
  for (double ab : {1.0, 3.0, 10.0}) {
    const IGParams p(ab, ab);
    for (double z = 0.05; z < 3.0; z *= 1.4) {
      EXPECT_LT(rel_err(conv_pdf(p, p, z), conv_pdf(p, p, -z)), 1e-10) << ab << " " << z;
    }
  }
}

TEST(ConvPdf, Normalized) {
  EXPECT_NEAR(conv_mass(IGParams(3, 3), IGParams(3, 3)), 1.0, 1e-6);
  EXPECT_NEAR(conv_mass(IGParams(1, 1), IGParams(2, 3)), 1.0, 1e-6);
}

TEST(ConvPdf, SwapReflects) {
  const IGParams p1(1, 1);
  const IGParams p2(2, 3);
  for (double z = -3.0; z <= 3.0; z += 0.3) EXPECT_EQ(conv_pdf(p1, p2, z), conv_pdf(p2, p1, -z));
}

TEST(ConvPdf, MonteCarloCellAtZero) {
  const IGParams p(3, 3);
  SimConfig cfg;
  cfg.n_samples = 10000000;
  cfg.seed = 41;
  const std::vector<double> z = sample_diff(p, p, cfg);
  const double h = 0.01;
  const double hits = static_cast<double>(std::count_if(z.begin(), z.end(), [&](double x) {
    return x > -0.5 * h && x < 0.5 * h;
  }));
  const double n = static_cast<double>(z.size());
  const double prob = hits / n;
  const double se = std::sqrt(prob * (1.0 - prob) / n) / h;
  EXPECT_LT(std::abs(prob / h - conv_pdf(p, p, 0.0)), 4.0 * se);
}

TEST(ConvPdf, DeepTailIsFinite) {
  const IGParams p(30, 30);
  const double lv = conv_log_pdf(p, p, 5.0);
  EXPECT_TRUE(std::isfinite(lv));
  EXPECT_LT(lv, std::log(1e-300));
}

TEST(ConvTail, LimitsAndSymmetry) {
  const IGParams p(3, 3);
  EXPECT_NEAR(conv_tail(p, p, 0.0), 0.5, 1e-8);
  EXPECT_NEAR(conv_tail(p, p, -50.0), 1.0, 1e-15);
  EXPECT_EQ(conv_tail(p, p, -std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_EQ(conv_tail(p, p, std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_NEAR(conv_tail(IGParams(1, 1), IGParams(1, 1), 0.0), 0.5, 1e-8);
}

TEST(ConvTail, ComplementOfIntegratedDensity) {
  const IGParams p(3, 3);
  const double below = integrate([&](double z) { return conv_pdf(p, p, z); }, -30.0, 2.0, {}, {-1.0, 0.0, 1.0});
  EXPECT_NEAR(conv_tail(p, p, 2.0), 1.0 - below, 1e-7);
}

TEST(ConvTail, CdfIsComplement) {
  const IGParams p1(1, 1);
  const IGParams p2(2, 3);
  for (double z = -2.0; z <= 4.0; z += 0.5) EXPECT_NEAR(conv_tail(p1, p2, z) + conv_cdf(p1, p2, z), 1.0, 1e-12);
}

TEST(ConvTail, DeepTailSixDigits) {
  const std::tuple<IGParams, IGParams, double> cases[] = {
      {{1, 1}, {1, 1}, 60.0}, {{1, 1}, {1, 1}, 120.0}, {{2, 2}, {2, 2}, 30.0}, {{1, 1}, {2, 2}, 100.0},
      {{3, 3}, {3, 3}, 8.0}};
  for (const auto& [p1, p2, z] : cases) {
    const double ref = tail_oracle(p1, p2, z);
    EXPECT_LT(rel_err(conv_tail(p1, p2, z), ref), 1e-6) << z << " " << ref;
  }
  EXPECT_LT(conv_tail(IGParams(1, 1), IGParams(1, 1), 120.0), 1e-25);
}

TEST(ConvTail, DerivativeIsMinusDensity) {
  const std::pair<IGParams, IGParams> pairs[] = {{{3, 3}, {3, 3}}, {{1, 1}, {2, 3}}, {{2, 2}, {4, 4}}};
  for (const auto& [p1, p2] : pairs) {
    const CumulantSet k = diff_cumulants(p1, p2);
    const double sd = std::sqrt(k.k2);
    for (double u = -3.0; u <= 5.0; u += 0.5) {
      const double z = k.k1 + u * sd;
      const double h = 1e-3 * sd;
      const double slope = (conv_tail(p1, p2, z + h) - conv_tail(p1, p2, z - h)) / (2.0 * h);
      EXPECT_LT(rel_err(-slope, conv_pdf(p1, p2, z)), 1e-5) << u;
    }
  }
}

TEST(ConvQuantile, InvertsCdf) {
  const IGParams p1(1, 1);
  const IGParams p2(2, 3);
  for (double prob : {1e-6, 0.01, 0.3, 0.5, 0.9, 0.999999}) {
    EXPECT_NEAR(conv_cdf(p1, p2, conv_quantile(p1, p2, prob)), prob, 1e-10 * std::max(prob, 1e-3));
  }
  EXPECT_THROW(conv_quantile(p1, p2, 0.0), DomainError);
  EXPECT_THROW(conv_quantile(p1, p2, 1.0), DomainError);
}

TEST(TailFloor, ValueForThirty) {
  const TailFloor f = tail_floor(IGParams(30, 30), IGParams(30, 30));
  EXPECT_LT(rel_err(f.log, 900.0 * (1.0 - std::numbers::sqrt2)), 1e-14);
  EXPECT_LT(rel_err(f.log, oracle::kLogFloor3030), 1e-14);
  EXPECT_NEAR(f.log / std::numbers::ln10, -161.903, 0.005);
  EXPECT_LT(rel_err(f.value, 1.25e-162), 0.01);
}

TEST(TailFloor, UnitPair) {
  const TailFloor f = tail_floor(IGParams(1, 1), IGParams(1, 1));
  EXPECT_LT(rel_err(f.value, std::exp(1.0 - std::numbers::sqrt2)), 1e-15);
  EXPECT_LT(rel_err(f.value, oracle::kFloor11), 1e-15);
}

TEST(AsymptoticTail, ApproachesFloorAtZero) {
  const IGParams p1(1, 2);
  const IGParams p2(3, 1);
  const TailFloor f = tail_floor(p1, p2);
  EXPECT_DOUBLE_EQ(asymptotic_tail(p1, p2, 0.0), f.value);
  EXPECT_NEAR(asymptotic_tail(p1, p2, 1e-6), f.value, 1e-12);
  EXPECT_NEAR(asymptotic_log_tail(IGParams(30, 30), IGParams(30, 30), 1e-3), oracle::kLogFloor3030, 1e-9);
  EXPECT_THROW(asymptotic_tail(p1, p2, -0.1), DomainError);
}

TEST(AsymptoticTail, FloorInvariantUnderZ) {
  const IGParams p1(2, 2);
  const IGParams p2(4, 4);
  for (double z : {0.5, 3.0, 30.0}) {
    EXPECT_NEAR(asymptotic_log_tail(p1, p2, z) - ig_log_tail(p1, z), tail_floor(p1, p2).log, 1e-12);
  }
}

TEST(AsymptoticTail, RatioNearOneAtLargeZ) {
  const IGParams p(1, 1);
  const double ratio = std::exp(conv_log_tail(p, p, 30.0) - asymptotic_log_tail(p, p, 30.0));
  EXPECT_GE(ratio, 0.95);
  EXPECT_LE(ratio, 1.05);
}

TEST(AsymptoticTail, MonotoneConvergenceOnSmallGrid) {
  const std::pair<IGParams, IGParams> pairs[] = {{{1, 1}, {1, 1}}, {{2, 2}, {2, 2}}, {{1, 1}, {2, 2}}};
  for (const auto& [p1, p2] : pairs) {
    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (double z = 5.0; z <= 40.0; z += 2.5) {
      last = std::abs(std::exp(conv_log_tail(p1, p2, z) - asymptotic_log_tail(p1, p2, z)) - 1.0);
      EXPECT_LE(last, prev) << z;
      prev = last;
    }
    EXPECT_LE(last, 0.05);
  }
}

TEST(SoaTail, FormulaAndSupport) {
  EXPECT_EQ(soa_tail(3, 3, 0.0), 0.0);
  EXPECT_EQ(soa_tail(3, 3, -1.0), 0.0);
  const double direct = 2.0 / 9.0 * std::exp(-(std::numbers::sqrt2 - 1.0) * 9.0) * ig_pdf(IGParams(3, 3), 5.0);
  EXPECT_LT(rel_err(soa_tail(3, 3, 5.0), direct), 1e-14);
  EXPECT_LT(rel_err(soa_tail(3, 3, 5.0), oracle::kSoa33At5), 1e-13);
}

TEST(SoaTail, ConvergesMoreSlowlyThanAsymptotic) {
  const IGParams p(3, 3);
  for (double z = 6.0; z <= 12.0; z += 0.5) {
    const double exact = conv_log_tail(p, p, z);
    const double asym = std::abs(std::exp(asymptotic_log_tail(p, p, z) - exact) - 1.0);
    const double soa = std::abs(std::exp(soa_log_tail(3, 3, z) - exact) - 1.0);
    EXPECT_LE(asym, soa) << z;
  }
}

TEST(Diff, NigFitQualityForLargerParameters) {
  for (double ab : {3.0, 10.0}) {
    const IGParams p(ab, ab);
    const NIGParams fit = approx_diff(p, p);
    const double sd = std::sqrt(2.0 * ab / (ab * ab * ab));
    const double kl = kl_divergence([&](double z) { return conv_pdf(p, p, z); },
                                    [&](double z) { return nig_pdf(fit, z); },
                                    {-40.0 * sd - 120.0 / (ab * ab), 40.0 * sd + 120.0 / (ab * ab)});
    EXPECT_GE(kl, 0.0);
    EXPECT_LT(kl, 1e-2);
  }
}

TEST(Diff, Deterministic) {
  const IGParams p1(1, 1);
  const IGParams p2(2, 3);
  EXPECT_EQ(conv_pdf(p1, p2, 0.3), conv_pdf(p1, p2, 0.3));
  EXPECT_EQ(conv_tail(p1, p2, 2.0), conv_tail(p1, p2, 2.0));
}

}  // namespace
}  // namespace igdiff

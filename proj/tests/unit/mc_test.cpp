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

#include "igdiff/mc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "igdiff/diff.hpp"
#include "igdiff/errors.hpp"
#include "igdiff/metrics.hpp"
#include "igdiff/nig.hpp"

namespace igdiff {
namespace {

double mean_of(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sd_of(const std::vector<double>& x) {
  const double m = mean_of(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size() - 1));
}

double ks_against_ig(std::vector<double> x, const IGParams& p) {
  std::sort(x.begin(), x.end());
  return ks_distance(x, [&](double t) { return ig_cdf(p, t); });
}

TEST(SampleDiff, MeanWithinFiveStandardErrors) {
  const IGParams p1(1, 1);
  const IGParams p2(2, 3);
  SimConfig cfg;
  cfg.n_samples = 1000000;
  cfg.seed = 5;
  const std::vector<double> z = sample_diff(p1, p2, cfg);
  ASSERT_EQ(z.size(), cfg.n_samples);
  const double se = sd_of(z) / std::sqrt(static_cast<double>(z.size()));
  EXPECT_LT(std::abs(mean_of(z) - diff_cumulants(p1, p2).k1), 5.0 * se);
}

TEST(SampleDiff, TailWithinFourBinomialErrors) {
  const IGParams p(3, 3);
  SimConfig cfg;
  cfg.n_samples = 1000000;
  cfg.seed = 6;
  const std::vector<double> z = sample_diff(p, p, cfg);
  const double t = conv_quantile(p, p, 0.99);
  const double tail = conv_tail(p, p, t);
  const double n = static_cast<double>(z.size());
  const double hits = static_cast<double>(std::count_if(z.begin(), z.end(), [&](double v) { return v > t; }));
  EXPECT_LT(std::abs(hits / n - tail), 4.0 * std::sqrt(tail * (1.0 - tail) / n));
}

TEST(SampleDiff, ChiSquareAgainstConvolution) {
  const IGParams p(3, 3);
  SimConfig cfg;
  cfg.n_samples = 1000000;
  cfg.seed = 8;
  const std::vector<double> z = sample_diff(p, p, cfg);
  std::vector<double> edges;
  for (int i = 1; i < 50; ++i) edges.push_back(conv_quantile(p, p, i / 50.0));
  EXPECT_GE(chi_square_equal_probability(z, edges).p_value, 0.01);
}

TEST(SampleDiff, IndependentOfWorkerCount) {
  const IGParams p1(1, 2);
  const IGParams p2(3, 1);
  SimConfig cfg;
  cfg.n_samples = 3 * kSampleBlock + 17;
  cfg.seed = 12;
  cfg.workers = 1;
  const std::vector<double> one = sample_diff(p1, p2, cfg);
  cfg.workers = 4;
  EXPECT_EQ(one, sample_diff(p1, p2, cfg));
  cfg.workers = 0;
  EXPECT_EQ(one, sample_diff(p1, p2, cfg));
}

TEST(SampleDiff, SeedSelectsSequence) {
  const IGParams p(2, 2);
  SimConfig cfg;
  cfg.n_samples = 1000;
  cfg.seed = 1;
  const std::vector<double> a = sample_diff(p, p, cfg);
  EXPECT_EQ(a, sample_diff(p, p, cfg));
  cfg.seed = 2;
  EXPECT_NE(a, sample_diff(p, p, cfg));
}

TEST(SampleDiff, PrefixStable) {
  const IGParams p(2, 2);
  SimConfig cfg;
  cfg.n_samples = 5000;
  cfg.seed = 4;
  const std::vector<double> small = sample_diff(p, p, cfg);
  cfg.n_samples = 9000;
  const std::vector<double> large = sample_diff(p, p, cfg);
  EXPECT_TRUE(std::equal(small.begin(), small.end(), large.begin()));
}

TEST(SimConfig, Validation) {
  SimConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.n_samples = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.dt = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.max_steps = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(FirstPassage, MeanNearIgMean) {
  const PhysicalChannel c(1.0, 1.0, 0.5);
  SimConfig cfg;
  cfg.n_samples = 20000;
  cfg.seed = 3;
  cfg.dt = 1e-3;
  const FirstPassageResult r = first_passage_sim(c, cfg);
  EXPECT_EQ(r.censored, 0u);
  ASSERT_EQ(r.times.size(), cfg.n_samples);
  const double se = sd_of(r.times) / std::sqrt(static_cast<double>(r.times.size()));
  const double bias = 0.5826 * std::sqrt(2.0 * c.diffusion() * cfg.dt) / c.velocity();
  EXPECT_LT(std::abs(mean_of(r.times) - 1.0 - bias), 5.0 * se);
  EXPECT_GT(mean_of(r.times), 1.0);
}

TEST(FirstPassage, DriftOnlyLimit) {
  const PhysicalChannel c(1.0, 2.0, 1e-14);
  SimConfig cfg;
  cfg.n_samples = 100;
  cfg.dt = 1e-3;
  const FirstPassageResult r = first_passage_sim(c, cfg);
  for (double t : r.times) EXPECT_NEAR(t, 0.5, cfg.dt + 1e-9);
}

TEST(FirstPassage, KsShrinksWhenDtHalves) {
  const PhysicalChannel c(1.0, 1.0, 0.5);
  const IGParams law = physical_to_ig(c);
  SimConfig cfg;
  cfg.n_samples = 20000;
  cfg.seed = 9;
  double prev = 1.0;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    cfg.dt = dt;
    const double ks = ks_against_ig(first_passage_sim(c, cfg).times, law);
    EXPECT_LT(ks, prev) << dt;
    prev = ks;
  }
}

TEST(FirstPassage, MeanBiasShrinksWhenDtHalves) {
  const PhysicalChannel c(1.0, 1.0, 0.5);
  SimConfig cfg;
  cfg.n_samples = 20000;
  cfg.seed = 10;
  double prev = 1.0;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    cfg.dt = dt;
    const double bias = mean_of(first_passage_sim(c, cfg).times) - 1.0;
    EXPECT_LT(bias, prev) << dt;
    prev = bias;
  }
}

TEST(FirstPassage, IndependentOfWorkerCount) {
  const PhysicalChannel c(1.0, 1.0, 0.5);
  SimConfig cfg;
  cfg.n_samples = 700;
  cfg.dt = 1e-3;
  cfg.workers = 1;
  const FirstPassageResult a = first_passage_sim(c, cfg);
  cfg.workers = 4;
  const FirstPassageResult b = first_passage_sim(c, cfg);
  EXPECT_EQ(a.times, b.times);
  EXPECT_EQ(a.censored, b.censored);
}

TEST(FirstPassage, CensorsLongPaths) {
  const PhysicalChannel c(1.0, 1.0, 0.5);
  SimConfig cfg;
  cfg.n_samples = 50000;
  cfg.seed = 2;
  cfg.dt = 1e-3;
  cfg.max_steps = 10000;
  const FirstPassageResult r = first_passage_sim(c, cfg);
  EXPECT_EQ(r.times.size() + r.censored, cfg.n_samples);
  EXPECT_GT(r.censored, 0u);
  EXPECT_LT(static_cast<double>(r.censored) / static_cast<double>(cfg.n_samples), 1e-3);
  for (double t : r.times) EXPECT_LE(t, 10.0 + 1e-9);
}

TEST(FirstPassage, RejectsUnderResolvedHorizon) {
  const PhysicalChannel c(10.0, 1.0, 0.5);
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.max_steps = 50000;
  EXPECT_THROW(first_passage_sim(c, cfg), ConfigError);
}

}  // namespace
}  // namespace igdiff

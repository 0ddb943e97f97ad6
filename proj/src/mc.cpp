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
#include <sstream>

#include "igdiff/errors.hpp"
#include "igdiff/parallel.hpp"
#include "igdiff/random.hpp"

namespace igdiff {
namespace {

constexpr std::uint64_t kTagFirst = 1;
constexpr std::uint64_t kTagSecond = 2;
constexpr std::uint64_t kTagPath = 3;
constexpr std::size_t kPathsPerTask = 256;
// Coarse intervals are dt's mantissa times 2^-kCoarseExponent.
constexpr int kCoarseExponent = 4;

struct Refinement {
  double coarse;  // length of a coarse interval
  int levels;     // dt = coarse / 2^levels
};

Refinement refinement_for(double dt) {
  int exponent = 0;
  const double mantissa = std::frexp(dt, &exponent);
  const int levels = -kCoarseExponent - exponent;
  if (levels <= 0) return {dt, 0};
  return {std::ldexp(mantissa, -kCoarseExponent), levels};
}

// Brownian increments over the fine steps of coarse interval j of a path.
class BridgeBuilder {
 public:
  BridgeBuilder(std::uint64_t path_key, Refinement r)
      : key_(path_key), r_(r), n_(std::size_t{1} << r.levels), w_(n_ + 1) {}

  std::size_t steps() const { return n_; }

  // w[k] = W(t_j + k dt) - W(t_j) for k = 0..steps().
  const std::vector<double>& interval(std::uint64_t j) {
    const std::uint64_t base = mix64(key_ ^ mix64(j + kGolden));
    w_[0] = 0.0;
    w_[n_] = std::sqrt(r_.coarse) * gaussian_pair(base).first;
    const double fine = r_.coarse / static_cast<double>(n_);
    for (int level = 1; level <= r_.levels; ++level) {
      const std::size_t stride = n_ >> level;
      const double sd = std::sqrt(0.5 * static_cast<double>(stride) * fine);
      const std::size_t count = std::size_t{1} << (level - 1);
      const std::uint64_t level_key = base + (static_cast<std::uint64_t>(level) << 40) * kGolden;
      for (std::size_t i = 0; i < count; i += 2) {
        const auto [g0, g1] = gaussian_pair(level_key + mix64(i >> 1));
        const std::size_t m0 = stride * (2 * i + 1);
        w_[m0] = 0.5 * (w_[m0 - stride] + w_[m0 + stride]) + sd * g0;
        if (i + 1 < count) {
          const std::size_t m1 = m0 + 2 * stride;
          w_[m1] = 0.5 * (w_[m1 - stride] + w_[m1 + stride]) + sd * g1;
        }
      }
    }
    return w_;
  }

 private:
  std::uint64_t key_;
  Refinement r_;
  std::size_t n_;
  std::vector<double> w_;
};

}  // namespace

void SimConfig::validate() const {
  if (n_samples < 1) throw ConfigError("SimConfig: n_samples must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("SimConfig: dt must be positive");
  if (max_steps < 1) throw ConfigError("SimConfig: max_steps must be >= 1");
}

std::vector<double> sample_diff(const IGParams& p1, const IGParams& p2, const SimConfig& cfg) {
  cfg.validate();
  std::vector<double> out(cfg.n_samples);
  const std::size_t blocks = (cfg.n_samples + kSampleBlock - 1) / kSampleBlock;
  parallel_for(blocks, cfg.workers, [&](std::size_t b) {
    CounterStream g1(cfg.seed, kTagFirst, b);
    CounterStream g2(cfg.seed, kTagSecond, b);
    const std::size_t end = std::min(cfg.n_samples, (b + 1) * kSampleBlock);
    for (std::size_t i = b * kSampleBlock; i < end; ++i) out[i] = ig_sample(p1, g1) - ig_sample(p2, g2);
  });
  return out;
}

FirstPassageResult first_passage_sim(const PhysicalChannel& c, const SimConfig& cfg) {
  cfg.validate();
  const double d = c.distance();
  const double v = c.velocity();
  const double horizon = static_cast<double>(cfg.max_steps) * cfg.dt;
  if (d / v > 0.1 * horizon) {
    std::ostringstream msg;
    msg << "first_passage_sim: expected hitting time d/v = " << d / v << " exceeds 0.1 * max_steps * dt = "
        << 0.1 * horizon;
    throw ConfigError(msg.str());
  }

  const Refinement r = refinement_for(cfg.dt);
  const double fine = r.coarse / static_cast<double>(std::size_t{1} << r.levels);
  const double drift = v * fine;
  const double scale = std::sqrt(2.0 * c.diffusion());
  const std::uint64_t stream = stream_key(cfg.seed, kTagPath, 0);

  constexpr double kCensored = -1.0;
  std::vector<double> times(cfg.n_samples, kCensored);
  const std::size_t tasks = (cfg.n_samples + kPathsPerTask - 1) / kPathsPerTask;
  parallel_for(tasks, cfg.workers, [&](std::size_t task) {
    const std::size_t end = std::min(cfg.n_samples, (task + 1) * kPathsPerTask);
    for (std::size_t path = task * kPathsPerTask; path < end; ++path) {
      BridgeBuilder bridge(mix64(stream ^ mix64(path)), r);
      double x0 = 0.0;
      std::size_t step = 0;
      for (std::uint64_t j = 0; step < cfg.max_steps; ++j) {
        const std::vector<double>& w = bridge.interval(j);
        bool hit = false;
        std::size_t k = 1;
        for (; k <= bridge.steps() && step + k <= cfg.max_steps; ++k) {
          if (x0 + drift * static_cast<double>(k) + scale * w[k] >= d) {
            hit = true;
            break;
          }
        }
        if (hit) {
          times[path] = static_cast<double>(step + k) * fine;
          break;
        }
        x0 += drift * static_cast<double>(bridge.steps()) + scale * w[bridge.steps()];
        step += bridge.steps();
      }
    }
  });

  FirstPassageResult result;
  result.times.reserve(times.size());
  for (double t : times) {
    if (t == kCensored) {
      ++result.censored;
    } else {
      result.times.push_back(t);
    }
  }
  return result;
}

}  // namespace igdiff

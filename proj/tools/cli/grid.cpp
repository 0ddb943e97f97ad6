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

#include "cli/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "igdiff/errors.hpp"

namespace igdiff::cli {
namespace {

constexpr std::size_t kMaxPoints = 10000000;
constexpr int kMaxDecimals = 15;

double parse_number(std::string_view token) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError("grid: '" + std::string(token) + "' is not a finite number");
  }
  return value;
}

// Fractional digits needed to print the token exactly, e.g. "0.05" -> 2,
// "1e-3" -> 3, "2.5e1" -> 0.
int decimals_of(std::string_view token) {
  int exponent = 0;
  const auto e = token.find_first_of("eE");
  if (e != std::string_view::npos) {
    std::from_chars(token.data() + e + 1 + (token[e + 1] == '+' ? 1 : 0), token.data() + token.size(), exponent);
    token = token.substr(0, e);
  }
  const auto dot = token.find('.');
  const int frac = dot == std::string_view::npos ? 0 : static_cast<int>(token.size() - dot - 1);
  return std::clamp(frac - exponent, 0, kMaxDecimals);
}

}  // namespace

std::vector<double> Grid::points() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::string text = format_fixed(start + step * static_cast<double>(i), decimals);
    std::from_chars(text.data(), text.data() + text.size(), out[i]);
  }
  return out;
}

Grid parse_grid(std::string_view spec) {
  std::vector<std::string_view> parts;
  for (std::size_t pos = 0;;) {
    const auto colon = spec.find(':', pos);
    parts.push_back(spec.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() == 1) return {parse_number(parts[0]), 1.0, 1, decimals_of(parts[0])};
  if (parts.size() != 3) throw ConfigError("grid: expected start:stop:step, got '" + std::string(spec) + "'");

  const double start = parse_number(parts[0]);
  const double stop = parse_number(parts[1]);
  const double step = parse_number(parts[2]);
  if (!(step > 0.0)) throw ConfigError("grid: step must be positive");
  if (stop < start) throw ConfigError("grid: stop must not be below start");
  const double intervals = std::floor((stop - start) / step + 1e-9);
  if (intervals + 1.0 > static_cast<double>(kMaxPoints)) throw ConfigError("grid: too many points");
  const int decimals = std::max({decimals_of(parts[0]), decimals_of(parts[1]), decimals_of(parts[2])});
  return {start, step, static_cast<std::size_t>(intervals) + 1, decimals};
}

Grid covering_grid(double lo, double hi, int intervals) {
  if (!(hi > lo) || intervals < 1) throw ConfigError("covering_grid: need lo < hi");
  const double raw = (hi - lo) / intervals;
  const int magnitude = static_cast<int>(std::floor(std::log10(raw))) - 1;
  const double unit = std::pow(10.0, magnitude);
  const double step = std::ceil(raw / unit) * unit;
  const double first = std::floor(lo / step);
  const double last = std::ceil(hi / step);
  return {first * step, step, static_cast<std::size_t>(last - first) + 1, std::clamp(-magnitude, 0, kMaxDecimals)};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, ptr};
}

std::string format_fixed(double x, int decimals) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, decimals);
  if (ec != std::errc()) return format_number(x);
  std::string out(buf, ptr);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

}  // namespace igdiff::cli

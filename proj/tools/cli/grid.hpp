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

#ifndef IGDIFF_CLI_GRID_HPP_
#define IGDIFF_CLI_GRID_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace igdiff::cli {

// Evaluation grid start, start + step, ... with every point rounded to
// `decimals` fractional digits, so the printed and the evaluated abscissae
// are the same number.
struct Grid {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 1;
  int decimals = 0;

  std::vector<double> points() const;
};

/// Parses "start:stop:step" (stop included when it lies on the grid) or a
/// single number. Throws ConfigError on malformed input.
Grid parse_grid(std::string_view spec);

/// Grid of about `intervals` steps covering [lo, hi], with a step rounded to
/// two significant digits and points on integer multiples of the step.
Grid covering_grid(double lo, double hi, int intervals = 200);

/// Shortest round-trip decimal representation; "inf", "-inf", "nan" for
/// non-finite values.
std::string format_number(double x);
/// Fixed notation with the given number of fractional digits, never "-0".
std::string format_fixed(double x, int decimals);

}  // namespace igdiff::cli

#endif  // IGDIFF_CLI_GRID_HPP_

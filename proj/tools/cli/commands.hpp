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

#ifndef IGDIFF_CLI_COMMANDS_HPP_
#define IGDIFF_CLI_COMMANDS_HPP_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "igdiff/ig.hpp"

namespace igdiff::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct FigureSet {
  IGParams p1;
  IGParams p2;
};

struct FigureSpec {
  int id = 0;
  std::string kind;  // "pdf" or "tail"
  std::vector<std::string> methods;
  std::vector<FigureSet> sets;
  std::string grid;  // empty: per-set default grid
};

/// Parameter sets and curves of a figure bundle. Throws ConfigError for ids
/// outside 1..7.
FigureSpec figure_spec(int id);

}  // namespace igdiff::cli

#endif  // IGDIFF_CLI_COMMANDS_HPP_

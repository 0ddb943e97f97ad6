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

#ifndef IGDIFF_CLI_OUTPUT_HPP_
#define IGDIFF_CLI_OUTPUT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace igdiff::cli {

using Json = nlohmann::ordered_json;

std::uint32_t crc32_of(const std::string& bytes);

// Provenance record written next to every output file. Contains only
// inputs that determine the output bytes: no timestamps, host names or
// worker counts.
struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  Json params = Json::object();
  std::uint64_t seed = 0;
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  Json results = Json::object();
  Json outputs = Json::array();

  /// Records a written file by name, size and CRC-32.
  void add_output(const std::filesystem::path& file, const std::string& bytes);
  Json to_json() const;
};

/// Writes bytes verbatim (binary mode, so '\n' stays '\n').
void write_file(const std::filesystem::path& path, const std::string& bytes);

/// "<file>.manifest.json" next to an output file.
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

std::string dump(const Json& j);

}  // namespace igdiff::cli

#endif  // IGDIFF_CLI_OUTPUT_HPP_

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

#include "cli/output.hpp"

#include <cstdio>
#include <fstream>

#include <boost/crc.hpp>

#include "igdiff/errors.hpp"
#include "igdiff/version.hpp"

namespace igdiff::cli {

std::uint32_t crc32_of(const std::string& bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

void Manifest::add_output(const std::filesystem::path& file, const std::string& bytes) {
  char hex[9];
  std::snprintf(hex, sizeof hex, "%08x", crc32_of(bytes));
  outputs.push_back(Json{{"file", file.filename().string()}, {"bytes", bytes.size()}, {"crc32", hex}});
}

Json Manifest::to_json() const {
  return Json{
      {"schema", "igdiff-manifest/1"},
      {"version", kVersion},
      {"command", command},
      {"argv", argv},
      {"params", params},
      {"seed", seed},
      {"tolerances", {{"abs_tol", abs_tol}, {"rel_tol", rel_tol}}},
      {"results", results},
      {"outputs", outputs},
  };
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ConfigError("cannot write " + path.string());
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  return output.string() + ".manifest.json";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace igdiff::cli

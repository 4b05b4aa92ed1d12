// Copyright 2026 The ssbkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssbkit/datagen/generator.hpp"
#include "ssbkit/datagen/spec.hpp"

namespace ssbkit::datagen {

struct TableOutput {
  std::string table;
  std::string file;  // relative to the output directory
  std::int64_t rows = 0;
  std::string sha256;
};

struct DatasetManifest {
  GenSpec spec;
  std::vector<TableOutput> ssb;
  std::vector<TableOutput> tpch;

  nlohmann::json to_json() const;
  /// SHA-256 of the canonical JSON dump.
  std::string hash() const;
};

struct GenerateOptions {
  bool ssb = true;
  bool tpch = true;
  /// Restricts generation to these tables (case-insensitive); empty = all.
  std::vector<std::string> tables;
  /// Tables are independent; they may be generated concurrently.
  unsigned threads = 1;
};

inline constexpr const char* kManifestFile = "manifest.json";

/// Writes `<out>/ssb/<table>.tbl`, `<out>/tpch/<table>.tbl` and
/// `<out>/manifest.json`.
DatasetManifest generate_dataset(const GenSpec& spec, const GenerateOptions& options = {});

/// Path of a table file inside a generated dataset.
std::filesystem::path table_path(const std::filesystem::path& dir, Benchmark benchmark,
                                 std::string_view table);

} // namespace ssbkit::datagen

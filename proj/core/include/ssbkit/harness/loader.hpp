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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssbkit/datagen/generator.hpp"
#include "ssbkit/harness/engine.hpp"
#include "ssbkit/schema/catalog.hpp"

namespace ssbkit::harness {

struct TableLoad {
  std::string table;
  std::filesystem::path file;
  std::int64_t file_rows = 0;
  std::int64_t loaded_rows = 0;
  double millis = 0.0;
};

struct LoadReport {
  std::vector<TableLoad> tables;
  double total_ms = 0.0;
  nlohmann::json to_json() const;
};

/// .tbl paths for every stored table of `catalog` under a dataset
/// directory; throws Error(kNotFound) listing missing files.
std::map<std::string, std::filesystem::path> dataset_files(const std::filesystem::path& dataset_dir,
                                                           datagen::Benchmark benchmark,
                                                           const schema::SchemaCatalog& catalog);

/// Loads each file into its table and checks the engine's row count
/// against the file's line count.
LoadReport load(EngineAdapter& engine, const schema::SchemaCatalog& catalog,
                const std::map<std::string, std::filesystem::path>& tbl_files);

} // namespace ssbkit::harness

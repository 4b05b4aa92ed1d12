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

#include "ssbkit/harness/loader.hpp"

#include <chrono>

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/datagen/dataset.hpp"
#include "ssbkit/datagen/tbl.hpp"

namespace ssbkit::harness {

nlohmann::json LoadReport::to_json() const {
  nlohmann::json tables_json = nlohmann::json::array();
  for (const auto& t : tables) {
    tables_json.push_back({{"table", t.table},
                           {"file", t.file.generic_string()},
                           {"file_rows", t.file_rows},
                           {"loaded_rows", t.loaded_rows},
                           {"millis", t.millis}});
  }
  return {{"tables", tables_json}, {"total_ms", total_ms}};
}

std::map<std::string, std::filesystem::path> dataset_files(const std::filesystem::path& dataset_dir,
                                                           datagen::Benchmark benchmark,
                                                           const schema::SchemaCatalog& catalog) {
  std::map<std::string, std::filesystem::path> out;
  std::vector<std::string> missing;
  for (const auto& t : catalog.tables()) {
    auto path = datagen::table_path(dataset_dir, benchmark, t.name);
    if (!std::filesystem::is_regular_file(path)) {
      missing.push_back(path.string());
      continue;
    }
    out[t.name] = path;
  }
  if (!missing.empty()) {
    fail(ErrorKind::kNotFound, fmt::format("missing data files: {}", join(missing, ", ")));
  }
  return out;
}

LoadReport load(EngineAdapter& engine, const schema::SchemaCatalog& catalog,
                const std::map<std::string, std::filesystem::path>& tbl_files) {
  using Clock = std::chrono::steady_clock;
  LoadReport report;
  for (const auto& [name, file] : tbl_files) catalog.table(name);
  auto total_start = Clock::now();
  for (const auto& table : catalog.tables()) {
    auto it = std::ranges::find_if(tbl_files, [&](const auto& kv) { return iequals(kv.first, table.name); });
    if (it == tbl_files.end()) continue;
    TableLoad entry;
    entry.table = table.name;
    entry.file = it->second;
    entry.file_rows = datagen::count_lines(it->second);
    auto start = Clock::now();
    entry.loaded_rows = engine.bulk_load(table, it->second);
    entry.millis = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    auto engine_rows = engine.count_rows(table.name);
    if (entry.loaded_rows != entry.file_rows || engine_rows != entry.file_rows) {
      fail(ErrorKind::kEngine, fmt::format("row count mismatch for {}: file has {} lines, engine reports {}",
                                           table.name, entry.file_rows, engine_rows));
    }
    report.tables.push_back(std::move(entry));
  }
  if (!report.tables.empty()) {
    report.total_ms = std::chrono::duration<double, std::milli>(Clock::now() - total_start).count();
  }
  return report;
}

} // namespace ssbkit::harness

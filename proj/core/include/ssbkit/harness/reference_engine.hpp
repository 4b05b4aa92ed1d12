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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssbkit/harness/engine.hpp"
#include "ssbkit/schema/catalog.hpp"
#include "ssbkit/workload/eval.hpp"
#include "ssbkit/workload/sql.hpp"

namespace ssbkit::harness {

/// Naive in-memory evaluator: per-table filters, hash joins along equality
/// predicates, residual filters, grouping and aggregation. Columns are read
/// from .tbl files on first use, so only referenced columns are held.
class ReferenceDatabase {
 public:
  explicit ReferenceDatabase(schema::SchemaCatalog catalog);

  const schema::SchemaCatalog& catalog() const { return catalog_; }
  void attach(std::string_view table, const std::filesystem::path& file);
  bool attached(std::string_view table) const;
  std::int64_t row_count(std::string_view table);

  ResultSet run(const workload::SelectStmt& stmt);
  ResultSet run(std::string_view sql);
  /// Number of joined fact rows passing every WHERE predicate.
  std::int64_t count_matching_rows(const workload::SelectStmt& stmt);
  std::int64_t count_matching_rows(std::string_view sql);
  /// Join order chosen for `stmt`, for EXPLAIN-style output.
  std::string describe(const workload::SelectStmt& stmt);

 private:
  struct StoredTable {
    const schema::TableDef* def = nullptr;
    std::filesystem::path file;
    std::optional<std::int64_t> rows;
    std::map<std::string, std::vector<workload::Datum>> columns;
  };
  struct Joined;

  StoredTable& table(std::string_view name);
  const std::vector<workload::Datum>& column(StoredTable& t, const std::string& name);
  void load_columns(StoredTable& t, const std::vector<std::string>& names);
  Joined join(const workload::SelectStmt& stmt);

  schema::SchemaCatalog catalog_;
  std::map<std::string, StoredTable> tables_;
};

} // namespace ssbkit::harness

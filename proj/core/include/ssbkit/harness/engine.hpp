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
#include <string>
#include <string_view>
#include <vector>

#include "ssbkit/schema/catalog.hpp"
#include "ssbkit/schema/ddl.hpp"

namespace ssbkit::harness {

/// Query result with every value in canonical text form (integers as-is,
/// other numerics with two decimals, NULL as "NULL").
struct ResultSet {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::int64_t row_count() const { return static_cast<std::int64_t>(rows.size()); }
  /// Rows in lexicographic order; the order-insensitive comparison form.
  std::vector<std::vector<std::string>> sorted_rows() const;
  /// SHA-256 over the sorted rows, so equal multisets hash equally.
  std::string multiset_hash() const;
};

struct EngineCapabilities {
  bool bulk_load = true;
  bool secondary_indexes = true;
  bool generated_columns = true;
  /// Prefix used to request a plan, e.g. "EXPLAIN QUERY PLAN".
  std::string explain_syntax;
};

struct ConnectionParams {
  /// Database location; ":memory:" keeps everything in process.
  std::string path = ":memory:";
  std::map<std::string, std::string> options;
};

class EngineAdapter {
 public:
  virtual ~EngineAdapter() = default;

  virtual std::string id() const = 0;
  virtual std::string version() const = 0;
  virtual EngineCapabilities capabilities() const = 0;
  virtual schema::DdlOptions ddl_options(schema::KeyClauses keys) const = 0;

  /// Creates every table of the catalog.
  virtual void create_schema(const schema::SchemaCatalog& catalog, schema::KeyClauses keys);
  /// Runs a statement that returns no rows (DDL, CREATE INDEX, ...).
  virtual void execute(std::string_view sql) = 0;
  /// Loads a .tbl file into an existing table; returns rows inserted.
  /// Malformed lines raise Error(kParse) naming file and line.
  virtual std::int64_t bulk_load(const schema::TableDef& table, const std::filesystem::path& file) = 0;
  virtual std::int64_t count_rows(std::string_view table) = 0;
  /// Executes a query and drains its full result.
  virtual ResultSet query(std::string_view sql) = 0;
  virtual std::string explain(std::string_view sql) = 0;
  virtual void create_index(std::string_view name, std::string_view table,
                            const std::vector<std::string>& columns);
  /// Cache mitigation hook invoked between queries when enabled.
  virtual void flush_caches() {}
};

/// "sqlite" (embedded relational engine) or "reference" (naive in-memory
/// evaluator over the SSB query subset).
std::unique_ptr<EngineAdapter> make_engine(std::string_view id, const ConnectionParams& params = {});
std::vector<std::string> engine_ids();

/// Splits a script on top-level ';' (quotes respected).
std::vector<std::string> split_statements(std::string_view script);

} // namespace ssbkit::harness

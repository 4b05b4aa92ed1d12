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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ssbkit::schema {

enum class LogicalKind {
  kInteger,
  kDecimal,
  kFixedText,
  kVarText,
  kCalendarDate,
};

struct LogicalType {
  LogicalKind kind = LogicalKind::kInteger;
  int precision = 0;
  int scale = 0;
  int length = 0;

  static LogicalType integer() { return {LogicalKind::kInteger}; }
  static LogicalType decimal(int precision, int scale) {
    return {LogicalKind::kDecimal, precision, scale};
  }
  static LogicalType fixed_text(int n) { return {LogicalKind::kFixedText, 0, 0, n}; }
  static LogicalType var_text(int n) { return {LogicalKind::kVarText, 0, 0, n}; }
  static LogicalType calendar_date() { return {LogicalKind::kCalendarDate}; }

  bool is_text() const {
    return kind == LogicalKind::kFixedText || kind == LogicalKind::kVarText;
  }
  std::string to_string() const;
  bool operator==(const LogicalType&) const = default;
};

std::string_view to_string(LogicalKind kind);

struct ColumnDef {
  std::string name;
  LogicalType type;
  bool nullable = false;
  /// Set for virtual columns computed by the engine (e.g. LO_PROFIT when it
  /// is not materialised). Virtual columns never appear in .tbl files.
  std::optional<std::string> generated_expr;

  bool is_stored() const { return !generated_expr.has_value(); }
};

enum class TableKind { kFact, kDimension };

struct ForeignKey {
  std::vector<std::string> columns;
  std::string ref_table;
  std::vector<std::string> ref_columns;
};

/// How a table came to exist relative to the source schema it was derived
/// from. Empty lists mean "carried over as-is".
struct Provenance {
  std::vector<std::string> merged_from;
  std::vector<std::string> denormalized_from;
  bool added = false;
  std::string note;
};

struct TableDef {
  std::string name;
  TableKind kind = TableKind::kDimension;
  std::vector<ColumnDef> columns;
  std::vector<std::string> primary_key;
  std::vector<ForeignKey> foreign_keys;
  Provenance provenance;

  /// Case-insensitive lookup.
  const ColumnDef* find_column(std::string_view column) const;
  /// Index into `columns`; throws Error(kNotFound).
  std::size_t column_index(std::string_view column) const;
  /// Columns written to .tbl files, in declaration order.
  std::vector<const ColumnDef*> stored_columns() const;
};

enum class Variant { kSsb, kTpchReference };

/// Immutable, ordered collection of tables. Iteration order is the DDL
/// emission order (referenced tables first).
class SchemaCatalog {
 public:
  SchemaCatalog() = default;
  SchemaCatalog(std::string name, Variant variant, std::vector<TableDef> tables);

  const std::string& name() const { return name_; }
  Variant variant() const { return variant_; }
  const std::vector<TableDef>& tables() const { return tables_; }

  const TableDef* find_table(std::string_view table) const;
  const TableDef& table(std::string_view table) const;
  const TableDef* fact_table() const;

  /// Resolves an unqualified column to its owning table (SSB and TPC-H
  /// column names carry a table prefix and are unique across the catalog).
  const TableDef* owner_of(std::string_view column) const;

 private:
  std::string name_;
  Variant variant_ = Variant::kSsb;
  std::vector<TableDef> tables_;
};

struct SsbOptions {
  /// DATE is reserved in most SQL dialects, so the dimension gets a
  /// configurable physical name.
  std::string date_table_name = "DIM_DATE";
  /// Store LO_PROFIT in the fact table instead of exposing it as a
  /// generated column over LO_REVENUE - LO_SUPPLYCOST.
  bool materialize_profit = false;
};

inline constexpr std::string_view kProfitExpression = "LO_REVENUE - LO_SUPPLYCOST";

SchemaCatalog build_ssb_catalog(const SsbOptions& options = {});
SchemaCatalog build_tpch_reference_catalog();

/// Structural checks (unique names, keys resolve, single fact table for SSB,
/// no nullable SSB columns). Returns human-readable violations.
std::vector<std::string> validate(const SchemaCatalog& catalog);

} // namespace ssbkit::schema

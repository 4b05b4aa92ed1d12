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

#include "ssbkit/schema/ddl.hpp"

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"

namespace ssbkit::schema {

namespace {

std::string expand(std::string pattern, const LogicalType& type) {
  auto replace_all = [&](std::string_view key, int value) {
    std::size_t pos = 0;
    auto v = std::to_string(value);
    while ((pos = pattern.find(key, pos)) != std::string::npos) {
      pattern.replace(pos, key.size(), v);
      pos += v.size();
    }
  };
  replace_all("{p}", type.precision);
  replace_all("{s}", type.scale);
  replace_all("{n}", type.length);
  return pattern;
}

std::string column_list(const std::vector<std::string>& cols) { return join(cols, ", "); }

} // namespace

const TypeMap& neutral_type_map() {
  static const TypeMap kMap = {
      {LogicalKind::kInteger, "INTEGER"},
      {LogicalKind::kDecimal, "DECIMAL({p},{s})"},
      {LogicalKind::kFixedText, "CHAR({n})"},
      {LogicalKind::kVarText, "VARCHAR({n})"},
      {LogicalKind::kCalendarDate, "DATE"},
  };
  return kMap;
}

DdlOptions dialect_options(std::string_view dialect, KeyClauses keys) {
  DdlOptions options;
  options.keys = keys;
  auto d = to_lower(dialect);
  if (d == "neutral" || d == "postgresql" || d == "mysql") {
    // The neutral names are accepted verbatim by both servers.
  } else if (d == "sqlite") {
    // REAL affinity keeps decimals as floating point so aggregates never
    // silently switch between INTEGER and REAL storage classes.
    options.type_overrides = {
        {LogicalKind::kDecimal, "REAL"},
        {LogicalKind::kFixedText, "TEXT"},
        {LogicalKind::kVarText, "TEXT"},
        {LogicalKind::kCalendarDate, "TEXT"},
    };
  } else {
    fail(ErrorKind::kInvalidArgument, fmt::format("unknown SQL dialect '{}'", dialect));
  }
  return options;
}

std::string render_type(const ColumnDef& column, const DdlOptions& options) {
  std::string pattern;
  if (auto it = options.type_overrides.find(column.type.kind); it != options.type_overrides.end()) {
    pattern = it->second;
  } else if (auto jt = neutral_type_map().find(column.type.kind); jt != neutral_type_map().end()) {
    pattern = jt->second;
  }
  if (pattern.empty()) {
    fail(ErrorKind::kSchema, fmt::format("column {}: unsupported logical type {}", column.name,
                                         column.type.to_string()));
  }
  return expand(pattern, column.type);
}

std::string emit_ddl(const SchemaCatalog& catalog, const DdlOptions& options) {
  std::string out;
  for (const auto& t : catalog.tables()) {
    std::vector<std::string> lines;
    for (const auto& c : t.columns) {
      if (c.generated_expr && !options.emit_generated_columns) continue;
      auto line = fmt::format("  {} {}", c.name, render_type(c, options));
      if (c.generated_expr) {
        line += fmt::format(" GENERATED ALWAYS AS ({})", *c.generated_expr);
      } else if (!c.nullable) {
        line += " NOT NULL";
      }
      lines.push_back(std::move(line));
    }
    if (options.keys != KeyClauses::kNone && !t.primary_key.empty()) {
      lines.push_back(fmt::format("  PRIMARY KEY ({})", column_list(t.primary_key)));
    }
    if (options.keys == KeyClauses::kPrimaryAndForeign) {
      for (const auto& fk : t.foreign_keys) {
        lines.push_back(fmt::format("  FOREIGN KEY ({}) REFERENCES {} ({})", column_list(fk.columns),
                                    fk.ref_table, column_list(fk.ref_columns)));
      }
    }
    out += fmt::format("CREATE TABLE {} (\n{}\n);\n\n", t.name, join(lines, ",\n"));
  }
  return out;
}

nlohmann::json to_json(const SchemaCatalog& catalog) {
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& t : catalog.tables()) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : t.columns) {
      nlohmann::json jc = {{"name", c.name}, {"type", c.type.to_string()}, {"nullable", c.nullable}};
      if (c.generated_expr) jc["generated"] = *c.generated_expr;
      cols.push_back(std::move(jc));
    }
    nlohmann::json fks = nlohmann::json::array();
    for (const auto& fk : t.foreign_keys) {
      fks.push_back({{"columns", fk.columns}, {"references", fk.ref_table}, {"ref_columns", fk.ref_columns}});
    }
    tables.push_back({
        {"name", t.name},
        {"kind", t.kind == TableKind::kFact ? "fact" : "dimension"},
        {"columns", std::move(cols)},
        {"primary_key", t.primary_key},
        {"foreign_keys", std::move(fks)},
        {"provenance",
         {{"merged_from", t.provenance.merged_from},
          {"denormalized_from", t.provenance.denormalized_from},
          {"added", t.provenance.added},
          {"note", t.provenance.note}}},
    });
  }
  return {{"name", catalog.name()},
          {"variant", catalog.variant() == Variant::kSsb ? "ssb" : "tpch_reference"},
          {"tables", std::move(tables)}};
}

} // namespace ssbkit::schema

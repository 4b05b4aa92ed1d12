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

#include "ssbkit/schema/diff.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "ssbkit/common/strings.hpp"

namespace ssbkit::schema {

namespace {

std::string base_name(std::string_view column) {
  auto pos = column.find('_');
  return to_upper(pos == std::string_view::npos ? column : column.substr(pos + 1));
}

bool contains(const SchemaCatalog& c, std::string_view table) {
  return c.find_table(table) != nullptr;
}

void diff_columns(const TableDef& target, const std::vector<const TableDef*>& sources,
                  std::vector<TransformationRecord>& out) {
  std::set<std::string> source_bases;
  std::vector<std::string> source_names;
  for (const auto* s : sources) {
    source_names.push_back(s->name);
    for (const auto& c : s->columns) source_bases.insert(base_name(c.name));
  }
  std::set<std::string> target_bases;
  for (const auto& c : target.columns) {
    target_bases.insert(base_name(c.name));
    if (!source_bases.contains(base_name(c.name))) {
      out.push_back({TransformKind::kColumnAdded, source_names, {target.name}, c.name});
    }
  }
  for (const auto* s : sources) {
    for (const auto& c : s->columns) {
      if (!target_bases.contains(base_name(c.name))) {
        out.push_back({TransformKind::kColumnDropped, {s->name}, {target.name}, c.name});
      }
    }
  }
}

} // namespace

std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::kTableMerged:
      return "table_merged";
    case TransformKind::kTableDropped:
      return "table_dropped";
    case TransformKind::kTableDenormalizedInto:
      return "table_denormalized_into";
    case TransformKind::kTableAdded:
      return "table_added";
    case TransformKind::kColumnAdded:
      return "column_added";
    case TransformKind::kColumnDropped:
      return "column_dropped";
  }
  return "unknown";
}

std::string TransformationRecord::to_string() const {
  auto s = join(sources, "+");
  auto t = join(targets, ",");
  switch (kind) {
    case TransformKind::kColumnAdded:
    case TransformKind::kColumnDropped:
      return fmt::format("{}({}: {})", schema::to_string(kind), t, column);
    case TransformKind::kTableAdded:
      return fmt::format("{}({})", schema::to_string(kind), t);
    case TransformKind::kTableDropped:
      return fmt::format("{}({})", schema::to_string(kind), s);
    default:
      return fmt::format("{}({}->{})", schema::to_string(kind), s, t);
  }
}

std::vector<TransformationRecord> diff_catalogs(const SchemaCatalog& a, const SchemaCatalog& b) {
  std::vector<TransformationRecord> tables;
  std::vector<TransformationRecord> columns;
  std::set<std::string> consumed;

  for (const auto& ta : a.tables()) {
    if (const auto* tb = b.find_table(ta.name)) {
      diff_columns(ta, {tb}, columns);
      continue;
    }
    std::vector<const TableDef*> sources;
    for (const auto& s : ta.provenance.merged_from) {
      if (contains(b, s) && !contains(a, s)) sources.push_back(&b.table(s));
    }
    if (!sources.empty()) {
      TransformationRecord r{TransformKind::kTableMerged, {}, {ta.name}, {}};
      for (const auto* s : sources) {
        r.sources.push_back(s->name);
        consumed.insert(to_upper(s->name));
      }
      tables.push_back(std::move(r));
      diff_columns(ta, sources, columns);
    } else {
      tables.push_back({TransformKind::kTableAdded, {}, {ta.name}, {}});
    }
  }

  for (const auto& tb : b.tables()) {
    if (contains(a, tb.name)) continue;
    std::vector<std::string> targets;
    for (const auto& ta : a.tables()) {
      const auto& d = ta.provenance.denormalized_from;
      if (std::ranges::any_of(d, [&](const auto& s) { return iequals(s, tb.name); })) {
        targets.push_back(ta.name);
      }
    }
    if (!targets.empty()) {
      tables.push_back({TransformKind::kTableDenormalizedInto, {tb.name}, targets, {}});
      consumed.insert(to_upper(tb.name));
    }
  }

  for (const auto& tb : b.tables()) {
    if (!contains(a, tb.name) && !consumed.contains(to_upper(tb.name))) {
      tables.push_back({TransformKind::kTableDropped, {tb.name}, {}, {}});
    }
  }

  tables.insert(tables.end(), columns.begin(), columns.end());
  return tables;
}

} // namespace ssbkit::schema

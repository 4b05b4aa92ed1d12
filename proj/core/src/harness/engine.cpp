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

#include "ssbkit/harness/engine.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "engines.hpp"
#include "ssbkit/common/error.hpp"
#include "ssbkit/common/hash.hpp"
#include "ssbkit/common/strings.hpp"

namespace ssbkit::harness {

std::vector<std::vector<std::string>> ResultSet::sorted_rows() const {
  auto out = rows;
  std::ranges::sort(out);
  return out;
}

std::string ResultSet::multiset_hash() const {
  Sha256 h;
  h.update(std::to_string(columns.size()));
  for (const auto& row : sorted_rows()) {
    h.update("\x1e");
    for (const auto& v : row) {
      h.update(v);
      h.update("\x1f");
    }
  }
  return h.hex_digest();
}

void EngineAdapter::create_schema(const schema::SchemaCatalog& catalog, schema::KeyClauses keys) {
  for (const auto& stmt : split_statements(schema::emit_ddl(catalog, ddl_options(keys)))) execute(stmt);
}

void EngineAdapter::create_index(std::string_view name, std::string_view table,
                                 const std::vector<std::string>& columns) {
  execute(fmt::format("CREATE INDEX {} ON {} ({})", name, table, join(columns, ", ")));
}

std::unique_ptr<EngineAdapter> make_engine(std::string_view id, const ConnectionParams& params) {
  auto key = to_lower(id);
  if (key == "sqlite") return detail::make_sqlite_engine(params);
  if (key == "reference") return detail::make_reference_engine(params);
  fail(ErrorKind::kNotFound, fmt::format("unknown engine '{}' (available: {})", id, join(engine_ids(), ", ")));
}

std::vector<std::string> engine_ids() { return {"sqlite", "reference"}; }

std::vector<std::string> split_statements(std::string_view script) {
  std::vector<std::string> out;
  std::string current;
  bool quoted = false;
  for (char c : script) {
    if (c == '\'') quoted = !quoted;
    if (c == ';' && !quoted) {
      auto s = trim(current);
      if (!s.empty()) out.emplace_back(s);
      current.clear();
      continue;
    }
    current += c;
  }
  auto s = trim(current);
  if (!s.empty()) out.emplace_back(s);
  return out;
}

} // namespace ssbkit::harness

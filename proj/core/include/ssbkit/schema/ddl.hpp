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

#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ssbkit/schema/catalog.hpp"

namespace ssbkit::schema {

enum class KeyClauses {
  kNone,
  kPrimaryOnly,
  kPrimaryAndForeign,
};

/// Type templates use `{p}`, `{s}` and `{n}` for precision, scale and
/// length. An empty template marks the logical type as unsupported.
using TypeMap = std::map<LogicalKind, std::string>;

struct DdlOptions {
  KeyClauses keys = KeyClauses::kPrimaryOnly;
  /// Applied on top of the neutral type map.
  TypeMap type_overrides;
  bool emit_generated_columns = true;
};

const TypeMap& neutral_type_map();

/// Per-engine overrides: "neutral", "sqlite", "mysql", "postgresql".
DdlOptions dialect_options(std::string_view dialect, KeyClauses keys = KeyClauses::kPrimaryOnly);

std::string render_type(const ColumnDef& column, const DdlOptions& options);

/// One CREATE TABLE per table in catalog order, each terminated by `;` and
/// followed by a blank line. Pure function of its arguments.
std::string emit_ddl(const SchemaCatalog& catalog, const DdlOptions& options);

nlohmann::json to_json(const SchemaCatalog& catalog);

} // namespace ssbkit::schema

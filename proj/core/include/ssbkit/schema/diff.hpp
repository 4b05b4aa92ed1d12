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

#include <string>
#include <vector>

#include "ssbkit/schema/catalog.hpp"

namespace ssbkit::schema {

enum class TransformKind {
  kTableMerged,
  kTableDropped,
  kTableDenormalizedInto,
  kTableAdded,
  kColumnAdded,
  kColumnDropped,
};

std::string_view to_string(TransformKind kind);

struct TransformationRecord {
  TransformKind kind;
  /// Tables in the source catalog (merged or denormalised tables, the table
  /// losing a column, ...).
  std::vector<std::string> sources;
  /// Tables in the target catalog.
  std::vector<std::string> targets;
  /// Column name for column_added / column_dropped.
  std::string column;

  std::string to_string() const;
  bool operator==(const TransformationRecord&) const = default;
};

/// Lists the transformations that turn catalog `b` into catalog `a`.
/// Table provenance in `a` distinguishes merges and denormalisations from
/// plain drops; columns are matched by their name without the table prefix
/// (LO_SUPPLYCOST vs PS_SUPPLYCOST).
std::vector<TransformationRecord> diff_catalogs(const SchemaCatalog& a, const SchemaCatalog& b);

} // namespace ssbkit::schema

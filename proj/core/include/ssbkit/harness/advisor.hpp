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

#include <nlohmann/json.hpp>

#include "ssbkit/schema/catalog.hpp"
#include "ssbkit/workload/template.hpp"

namespace ssbkit::harness {

struct IndexAdvice {
  std::string table;
  std::vector<std::string> columns;
  std::vector<std::string> origins;  // query labels

  /// Deterministic index name, e.g. IX_LINEORDER_LO_DISCOUNT_LO_QUANTITY.
  std::string name() const;
  nlohmann::json to_json() const;
  bool operator==(const IndexAdvice&) const = default;
};

/// Columns used in WHERE predicates and join conditions (sub-selects
/// included). Each column gets single-column advice; two or more restricted
/// columns of one table in one query also yield composite advice. Entries
/// are deduplicated by (table, columns) and sorted.
std::vector<IndexAdvice> advise_indices(const std::vector<workload::QueryInstance>& instances,
                                        const schema::SchemaCatalog& catalog);

} // namespace ssbkit::harness

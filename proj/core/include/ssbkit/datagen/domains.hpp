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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssbkit/common/value.hpp"
#include "ssbkit/datagen/spec.hpp"

namespace ssbkit::datagen {

/// Declared value domain of a generated column. Every listed value is
/// equally likely; `grain_key` names the column identifying the unit of
/// observation when the value is drawn once per group (order-level
/// attributes of LINEORDER are drawn once per LO_ORDERKEY).
struct ColumnDomain {
  std::vector<Value> values;
  std::optional<std::string> grain_key;
};

/// Finite domain of an SSB column, or nullopt for free-text and derived
/// columns.
std::optional<ColumnDomain> declared_domain(const GenSpec& spec, std::string_view table,
                                            std::string_view column);

/// Distribution of dimension attribute `column` as seen by fact rows that
/// reach the dimension through `fact_fk` (e.g. D_YEAR via LO_ORDERDATE).
/// Date attributes are enumerated over the fact column's key window.
std::optional<ColumnDomain> attribute_domain_via(const GenSpec& spec, std::string_view fact_fk,
                                                 std::string_view table, std::string_view column);

struct UniformityReport {
  std::string column;
  double statistic = 0.0;
  double p_value = 1.0;
  std::int64_t observations = 0;
  std::int64_t categories = 0;
  std::int64_t out_of_domain = 0;
};

/// Pearson chi-square goodness of fit against the uniform distribution over
/// `domain`. Observations outside the domain make the test reject.
UniformityReport chi_square_uniform(std::string_view column, const std::vector<Value>& observations,
                                    const std::vector<Value>& domain);

/// Reads `column` from an SSB .tbl file and tests it against its declared
/// domain. Throws Error(kInvalidArgument) when the column has none.
UniformityReport uniformity_report(const GenSpec& spec, const std::filesystem::path& tbl_file,
                                   std::string_view table, std::string_view column);

} // namespace ssbkit::datagen

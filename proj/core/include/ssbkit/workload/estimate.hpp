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
#include <string_view>
#include <vector>

#include "ssbkit/datagen/spec.hpp"
#include "ssbkit/workload/sql.hpp"

namespace ssbkit::workload {

struct PredicateFactor {
  /// Attribute group the predicates were evaluated over, e.g.
  /// "LINEORDER.LO_DISCOUNT", "DIM_DATE", "CUSTOMER.geography".
  std::string group;
  std::vector<std::string> predicates;
  double fraction = 1.0;
  /// True when no domain was available and the default fraction was used.
  bool assumed = false;
};

struct FilterEstimate {
  double factor = 1.0;
  std::vector<PredicateFactor> factors;
};

inline constexpr double kUnknownPredicateFraction = 0.1;

/// Filter factor of the fact-table rows passing all non-join predicates.
/// Predicates are grouped by attribute group; each group's fraction is
/// measured over its generated domain and groups multiply (independence
/// across dimensions and measures holds by construction of the data).
FilterEstimate estimate_filter_factor(const SelectStmt& stmt, const datagen::GenSpec& data);
double estimated_filter_factor(std::string_view sql, const datagen::GenSpec& data);

} // namespace ssbkit::workload

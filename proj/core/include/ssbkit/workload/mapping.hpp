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

namespace ssbkit::workload {

struct MappingRow {
  int index = 0;
  std::string tpch_id;      // Q2, Q3, Q5, Q6
  std::string pair_label;  // label in the pairing figure (Q1.1, Q5.1, Q12.1, Q13.1, ...)
  std::string ssb_label;    // canonical flight label (Q1.1 ... Q4.2)
};

/// The ten experiment pairs in order.
const std::vector<MappingRow>& mapping_table();

/// Accepts either label form; throws Error(kNotFound) for unmapped labels.
std::string tpch_counterpart(std::string_view label);

/// Pair label or canonical label to the canonical flight label.
std::string canonical_label(std::string_view label);

} // namespace ssbkit::workload

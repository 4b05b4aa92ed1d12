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

#include "ssbkit/datagen/spec.hpp"

#include <algorithm>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/hash.hpp"
#include "ssbkit/common/rng.hpp"

namespace ssbkit::datagen {

void GenSpec::validate() const {
  if (calendar.end <= calendar.start) {
    fail(ErrorKind::kInvalidArgument, "calendar_end must be after calendar_start");
  }
  if (chunk_rows <= 0) fail(ErrorKind::kInvalidArgument, "chunk_rows must be positive");
  if (!ssb_plan.find("LINEORDER") || !ssb_plan.find(ssb.date_table_name)) {
    fail(ErrorKind::kInvalidArgument, "SSB cardinality plan must cover LINEORDER and the date table");
  }
  (void)geography_member(geography, 0);
  (void)part_member(part_hierarchy, 0);
}

nlohmann::json GenSpec::to_json() const {
  return {
      {"scale_factor", sf.to_string()},
      {"seed", seed},
      {"calendar_start", calendar.start.to_string()},
      {"calendar_end", calendar.end.to_string()},
      {"chunk_rows", chunk_rows},
      {"date_table", ssb.date_table_name},
      {"materialize_profit", ssb.materialize_profit},
      {"geography", datagen::to_json(geography)},
      {"part_hierarchy", datagen::to_json(part_hierarchy)},
      {"ssb_plan", ssb_plan.to_json()},
      {"tpch_plan", tpch_plan.to_json()},
      {"rng", std::string(kRngAlgorithm)},
  };
}

std::string GenSpec::hash() const { return sha256_hex(to_json().dump()); }

GenSpec make_spec(const ScaleFactor& sf, std::uint64_t seed) {
  GenSpec s;
  s.sf = sf;
  s.seed = seed;
  return s;
}

OrderWindow order_window(const Calendar& calendar) {
  // Orders stop 151 days before the calendar ends (as in dbgen) so commit
  // dates stay inside the date dimension; short calendars shrink the lags.
  auto span = static_cast<int>(calendar.days());
  int tail = std::min(151, span / 2);
  OrderWindow w;
  w.first = calendar.start;
  w.last = calendar.end + (-tail);
  w.max_lag = std::min(90, tail);
  w.min_lag = std::min(30, w.max_lag);
  return w;
}

} // namespace ssbkit::datagen

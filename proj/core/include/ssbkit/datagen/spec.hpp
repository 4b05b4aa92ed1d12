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
#include <string>

#include <nlohmann/json.hpp>

#include "ssbkit/common/scale_factor.hpp"
#include "ssbkit/datagen/cardinality.hpp"
#include "ssbkit/datagen/hierarchy.hpp"
#include "ssbkit/schema/catalog.hpp"

namespace ssbkit::datagen {

/// Everything that determines generated data. Two equal specs always
/// produce byte-identical files.
struct GenSpec {
  ScaleFactor sf;
  std::uint64_t seed = 42;
  Calendar calendar;
  std::filesystem::path output_dir;
  std::int64_t chunk_rows = 10'000;
  schema::SsbOptions ssb;
  GeographyConfig geography;
  PartHierarchyConfig part_hierarchy;
  CardinalityPlan ssb_plan = CardinalityPlan::ssb_default();
  CardinalityPlan tpch_plan = CardinalityPlan::tpch_default();

  /// Throws Error(kInvalidArgument) when an invariant is violated.
  void validate() const;

  /// Data-determining fields only (the output directory is excluded).
  nlohmann::json to_json() const;
  std::string hash() const;
};

GenSpec make_spec(const ScaleFactor& sf, std::uint64_t seed);

/// Order date window for fact rows: commit dates trail order dates by up to
/// `max_lag` days and must stay inside the calendar.
struct OrderWindow {
  Date first;
  Date last;
  int min_lag = 30;
  int max_lag = 90;
};

OrderWindow order_window(const Calendar& calendar);

} // namespace ssbkit::datagen

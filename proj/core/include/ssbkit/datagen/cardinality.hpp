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
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssbkit/common/date.hpp"
#include "ssbkit/common/scale_factor.hpp"

namespace ssbkit::datagen {

enum class ScalingRule {
  /// ceil(base * SF)
  kLinear,
  /// base * (1 + floor(log2 SF)) for SF >= 1, ceil(base * SF) below 1.
  kLogarithmic,
  /// One row per calendar day.
  kCalendar,
  /// Constant row count.
  kFixed,
  /// Determined by another table's generation (TPC-H LINEITEM lines per order).
  kDerived,
};

std::string_view to_string(ScalingRule rule);

struct TablePlan {
  std::string table;
  ScalingRule rule = ScalingRule::kLinear;
  std::int64_t base = 0;
};

struct Calendar {
  Date start = Date::from_ymd(1992, 1, 1);
  Date end = Date::from_ymd(1998, 12, 31);

  /// Inclusive day count.
  std::int64_t days() const { return end - start + 1; }
};

class CardinalityPlan {
 public:
  CardinalityPlan() = default;
  explicit CardinalityPlan(std::vector<TablePlan> tables) : tables_(std::move(tables)) {}

  static CardinalityPlan ssb_default(std::string_view date_table = "DIM_DATE");
  static CardinalityPlan tpch_default();

  const std::vector<TablePlan>& tables() const { return tables_; }
  const TablePlan* find(std::string_view table) const;

  nlohmann::json to_json() const;
  static CardinalityPlan from_json(const nlohmann::json& j);

 private:
  std::vector<TablePlan> tables_;
};

/// Row count of `table` at scale factor `sf`. Throws Error(kNotFound) for
/// tables absent from the plan and Error(kInvalidArgument) for kDerived
/// tables, whose size is only known after generation.
std::int64_t cardinality(const CardinalityPlan& plan, std::string_view table, const ScaleFactor& sf,
                         const Calendar& calendar = {});

} // namespace ssbkit::datagen

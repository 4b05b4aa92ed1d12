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

#include "ssbkit/datagen/cardinality.hpp"

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"

namespace ssbkit::datagen {

std::string_view to_string(ScalingRule rule) {
  switch (rule) {
    case ScalingRule::kLinear:
      return "linear";
    case ScalingRule::kLogarithmic:
      return "logarithmic";
    case ScalingRule::kCalendar:
      return "calendar";
    case ScalingRule::kFixed:
      return "fixed";
    case ScalingRule::kDerived:
      return "derived";
  }
  return "unknown";
}

namespace {

ScalingRule rule_from_string(std::string_view s) {
  for (auto r : {ScalingRule::kLinear, ScalingRule::kLogarithmic, ScalingRule::kCalendar,
                 ScalingRule::kFixed, ScalingRule::kDerived}) {
    if (s == to_string(r)) return r;
  }
  fail(ErrorKind::kInvalidArgument, fmt::format("unknown scaling rule '{}'", s));
}

} // namespace

CardinalityPlan CardinalityPlan::ssb_default(std::string_view date_table) {
  return CardinalityPlan({
      {"CUSTOMER", ScalingRule::kLinear, 30'000},
      {"SUPPLIER", ScalingRule::kLinear, 2'000},
      {"PART", ScalingRule::kLogarithmic, 200'000},
      {to_upper(date_table), ScalingRule::kCalendar, 0},
      {"LINEORDER", ScalingRule::kLinear, 6'000'000},
  });
}

CardinalityPlan CardinalityPlan::tpch_default() {
  return CardinalityPlan({
      {"REGION", ScalingRule::kFixed, 5},
      {"NATION", ScalingRule::kFixed, 25},
      {"PART", ScalingRule::kLinear, 200'000},
      {"SUPPLIER", ScalingRule::kLinear, 10'000},
      {"PARTSUPP", ScalingRule::kLinear, 800'000},
      {"CUSTOMER", ScalingRule::kLinear, 150'000},
      {"ORDERS", ScalingRule::kLinear, 1'500'000},
      {"LINEITEM", ScalingRule::kDerived, 6'000'000},
  });
}

const TablePlan* CardinalityPlan::find(std::string_view table) const {
  for (const auto& t : tables_) {
    if (iequals(t.table, table)) return &t;
  }
  return nullptr;
}

nlohmann::json CardinalityPlan::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : tables_) {
    out.push_back({{"table", t.table}, {"rule", to_string(t.rule)}, {"base", t.base}});
  }
  return out;
}

CardinalityPlan CardinalityPlan::from_json(const nlohmann::json& j) {
  std::vector<TablePlan> tables;
  for (const auto& e : j) {
    tables.push_back({to_upper(e.at("table").get<std::string>()),
                      rule_from_string(e.at("rule").get<std::string>()), e.value("base", std::int64_t{0})});
  }
  return CardinalityPlan(std::move(tables));
}

std::int64_t cardinality(const CardinalityPlan& plan, std::string_view table, const ScaleFactor& sf,
                         const Calendar& calendar) {
  const auto* t = plan.find(table);
  if (!t) fail(ErrorKind::kNotFound, fmt::format("table {} is not in the cardinality plan", table));
  std::int64_t rows = 0;
  switch (t->rule) {
    case ScalingRule::kLinear:
      rows = sf.scale_ceil(t->base);
      break;
    case ScalingRule::kLogarithmic:
      rows = sf.at_least_one() ? t->base * (1 + sf.floor_log2()) : sf.scale_ceil(t->base);
      break;
    case ScalingRule::kCalendar:
      rows = calendar.days();
      break;
    case ScalingRule::kFixed:
      rows = t->base;
      break;
    case ScalingRule::kDerived:
      fail(ErrorKind::kInvalidArgument,
           fmt::format("row count of {} is derived during generation", t->table));
  }
  return std::max<std::int64_t>(rows, 1);
}

} // namespace ssbkit::datagen

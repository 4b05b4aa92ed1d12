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
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssbkit/common/value.hpp"
#include "ssbkit/datagen/generator.hpp"
#include "ssbkit/datagen/spec.hpp"
#include "ssbkit/schema/catalog.hpp"

namespace ssbkit::workload {

enum class Dimension { kDate, kPart, kSupplier, kCustomer };

std::string_view to_string(Dimension d);
Dimension parse_dimension(std::string_view text);

using ParamValue = std::variant<std::int64_t, Decimal, std::string>;

/// SQL literal for a parameter: integers and decimals bare, text quoted.
std::string sql_literal(const ParamValue& v);

struct ParamDomain {
  enum class Kind { kIntRange, kChoice, kDateRange, kDecimalRange };
  Kind kind = Kind::kIntRange;
  std::int64_t min = 0;  // int_range bounds, or day/unit offsets for the others
  std::int64_t max = 0;
  std::vector<ParamValue> values;
  Date date_min;
  Decimal decimal_min;

  std::int64_t size() const;
  ParamValue at(std::int64_t index) const;
  bool contains(const ParamValue& v) const;
  static ParamDomain from_json(const nlohmann::json& j);
};

struct ParamSpec {
  std::string name;
  ParamDomain domain;
  ParamValue default_value;
};

/// A parameter computed from others (`op` plus op-specific fields).
struct DerivedParam {
  std::string name;
  nlohmann::json rule;
};

struct QueryTemplate {
  std::string id;  // Q1.1 ... Q4.3, or Q2/Q3/Q5/Q6 for TPC-H
  datagen::Benchmark benchmark = datagen::Benchmark::kSsb;
  int flight = 0;
  int position = 0;
  std::string title;
  std::string body;
  std::set<Dimension> dimensions;
  std::vector<ParamSpec> params;
  std::vector<DerivedParam> derived;
  std::optional<std::string> counterpart;

  static QueryTemplate from_text(std::string body, const nlohmann::json& sidecar);
};

using Bindings = std::vector<std::pair<std::string, ParamValue>>;

struct QueryInstance {
  std::string template_id;
  datagen::Benchmark benchmark = datagen::Benchmark::kSsb;
  std::optional<std::uint64_t> seed;  // nullopt = template defaults
  Bindings bindings;
  std::string sql;
  std::set<Dimension> dimensions;
  double estimated_filter_factor = 1.0;

  /// "Q1.1" for SSB, "TPCH-Q6" for TPC-H.
  std::string label() const;
  nlohmann::json to_json() const;
};

/// The 13 SSB templates in flight order.
const std::vector<QueryTemplate>& flight_catalog();
/// The TPC-H queries paired with SSB flights (Q2, Q3, Q5, Q6).
const std::vector<QueryTemplate>& tpch_reference_queries();
const QueryTemplate& find_template(std::string_view id,
                                   datagen::Benchmark benchmark = datagen::Benchmark::kSsb);

/// Loads `<stem>.sql` plus its `<stem>.json` sidecar.
QueryTemplate load_template(const std::filesystem::path& sql_file);

/// Resolves parameters (defaults when `seed` is empty, seeded draws from the
/// declared domains otherwise), then derived parameters.
Bindings bind_parameters(const QueryTemplate& t, std::optional<std::uint64_t> seed);

/// Substitutes `:name` placeholders and the date table name.
std::string render_sql(const QueryTemplate& t, const Bindings& bindings,
                       std::string_view date_table_name = "DIM_DATE");

/// Binds, renders and estimates the filter factor against `data` domains.
QueryInstance instantiate(const QueryTemplate& t, std::optional<std::uint64_t> seed,
                          const datagen::GenSpec& data);
QueryInstance instantiate(const QueryTemplate& t, std::optional<std::uint64_t> seed = std::nullopt);

/// Data spec used when none is supplied (SF 1, seed 42, default calendar).
const datagen::GenSpec& default_data_spec();

struct Violation {
  std::string code;  // parse_error, subquery_forbidden, self_join_forbidden, ...
  std::string detail;
  bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_sql(std::string_view sql, const schema::SchemaCatalog& catalog);
std::vector<Violation> validate_template(const QueryTemplate& t,
                                         const schema::SchemaCatalog& catalog = schema::build_ssb_catalog());

/// Dimensions restricted by the WHERE clause (joins excluded).
std::set<Dimension> restricted_dimensions(std::string_view sql, const schema::SsbOptions& options = {});

struct TemplateCoverage {
  std::string id;
  std::set<Dimension> dimensions;
  double estimated_filter_factor = 1.0;
};

struct FlightCoverage {
  int flight = 0;
  std::set<Dimension> dimensions;
  std::vector<TemplateCoverage> templates;
  double min_filter_factor = 1.0;
  double max_filter_factor = 1.0;
  double spread() const { return max_filter_factor - min_filter_factor; }
  /// Default-parameter factors strictly decrease from .1 to the last query.
  bool strictly_decreasing() const;
};

struct CoverageReport {
  std::vector<FlightCoverage> flights;
  nlohmann::json to_json() const;
};

CoverageReport coverage_report(const std::vector<QueryTemplate>& templates,
                               const datagen::GenSpec& data = default_data_spec());

} // namespace ssbkit::workload

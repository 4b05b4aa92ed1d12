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

#include "ssbkit/datagen/domains.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>
#include <fmt/format.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/datagen/generator.hpp"
#include "ssbkit/datagen/tbl.hpp"
#include "ssbkit/datagen/text_pools.hpp"

namespace ssbkit::datagen {

namespace {

std::vector<Value> int_range(std::int64_t lo, std::int64_t hi) {
  std::vector<Value> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (auto v = lo; v <= hi; ++v) out.emplace_back(v);
  return out;
}

std::vector<Value> strings(const std::vector<std::string>& pool) {
  return {pool.begin(), pool.end()};
}

template <typename F>
std::vector<Value> members(int count, F&& label) {
  std::vector<Value> out;
  for (int i = 0; i < count; ++i) out.emplace_back(label(i));
  return out;
}

std::vector<Value> date_attribute(const GenSpec& spec, std::string_view column, Date first, Date last) {
  auto catalog = schema::build_ssb_catalog(spec.ssb);
  const auto& table = catalog.table(spec.ssb.date_table_name);
  auto idx = table.column_index(column);
  auto stream = generate_table(spec, table.name);
  std::vector<Value> out;
  while (auto chunk = stream->next_chunk()) {
    for (auto& row : *chunk) {
      auto key = std::get<std::int64_t>(row[0]);
      auto d = Date::from_key(key);
      if (d >= first && d <= last) out.push_back(std::move(row[idx]));
    }
  }
  return out;
}

std::string domain_key(const Value& v) { return render(v); }

} // namespace

std::optional<ColumnDomain> declared_domain(const GenSpec& spec, std::string_view table_name,
                                            std::string_view column_name) {
  auto table = to_upper(table_name);
  auto column = to_upper(column_name);
  const auto& cal = spec.calendar;
  auto rows = [&](std::string_view t) { return cardinality(spec.ssb_plan, t, spec.sf, cal); };
  const std::string order_grain = "LO_ORDERKEY";

  if (table == "LINEORDER") {
    if (column == "LO_QUANTITY") return ColumnDomain{int_range(1, 50), {}};
    if (column == "LO_DISCOUNT") return ColumnDomain{int_range(0, 10), {}};
    if (column == "LO_TAX") return ColumnDomain{int_range(0, 8), {}};
    if (column == "LO_PARTKEY") return ColumnDomain{int_range(1, rows("PART")), {}};
    if (column == "LO_SUPPKEY") return ColumnDomain{int_range(1, rows("SUPPLIER")), {}};
    if (column == "LO_CUSTKEY") return ColumnDomain{int_range(1, rows("CUSTOMER")), order_grain};
    if (column == "LO_SHIPMODE") return ColumnDomain{strings(ship_modes()), {}};
    if (column == "LO_ORDERPRIORITY") return ColumnDomain{strings(order_priorities()), order_grain};
    if (column == "LO_SHIPPRIORITY") return ColumnDomain{{Value{std::string("0")}}, {}};
    if (column == "LO_SUPPLYCOST") {
      std::vector<Value> v;
      for (std::int64_t c = 100; c <= 100'000; ++c) v.emplace_back(Decimal{c, 2});
      return ColumnDomain{std::move(v), {}};
    }
    if (column == "LO_ORDERDATE") {
      auto w = order_window(cal);
      std::vector<Value> v;
      for (auto d = w.first; d <= w.last; d = d + 1) v.emplace_back(d.as_key());
      return ColumnDomain{std::move(v), order_grain};
    }
    return std::nullopt;
  }
  if (table == "CUSTOMER" || table == "SUPPLIER") {
    auto prefix = table.substr(0, 1) + "_";
    const auto& geo = spec.geography;
    if (column == prefix + "CITY") {
      return ColumnDomain{members(geo.member_count(), [&](int i) { return geography_member(geo, i).city; }), {}};
    }
    if (column == prefix + "NATION") {
      return ColumnDomain{members(25, [&](int i) { return geography_member(geo, i).nation; }), {}};
    }
    if (column == prefix + "REGION") return ColumnDomain{strings(regions()), {}};
    if (column == "C_CUSTKEY") return ColumnDomain{int_range(1, rows("CUSTOMER")), {}};
    if (column == "S_SUPPKEY") return ColumnDomain{int_range(1, rows("SUPPLIER")), {}};
    if (column == "C_MKTSEGMENT") return ColumnDomain{strings(market_segments()), {}};
    return std::nullopt;
  }
  if (table == "PART") {
    const auto& ph = spec.part_hierarchy;
    int per_mfgr = ph.manufacturers;
    int per_cat = ph.manufacturers * ph.categories_per_mfgr;
    if (column == "P_MFGR") {
      return ColumnDomain{members(per_mfgr, [&](int i) { return part_member(ph, i).mfgr; }), {}};
    }
    if (column == "P_CATEGORY") {
      return ColumnDomain{members(per_cat, [&](int i) { return part_member(ph, i).category; }), {}};
    }
    if (column == "P_BRAND1") {
      return ColumnDomain{members(ph.member_count(), [&](int i) { return part_member(ph, i).brand; }), {}};
    }
    if (column == "P_PARTKEY") return ColumnDomain{int_range(1, rows("PART")), {}};
    if (column == "P_SIZE") return ColumnDomain{int_range(1, 50), {}};
    if (column == "P_COLOR") return ColumnDomain{strings(colors()), {}};
    if (column == "P_TYPE") {
      std::vector<Value> v;
      for (const auto& a : type_syllables1())
        for (const auto& b : type_syllables2())
          for (const auto& c : type_syllables3()) v.emplace_back(fmt::format("{} {} {}", a, b, c));
      return ColumnDomain{std::move(v), {}};
    }
    if (column == "P_CONTAINER") {
      std::vector<Value> v;
      for (const auto& a : container_syllables1())
        for (const auto& b : container_syllables2()) v.emplace_back(fmt::format("{} {}", a, b));
      return ColumnDomain{std::move(v), {}};
    }
    return std::nullopt;
  }
  if (iequals(table, spec.ssb.date_table_name)) {
    auto catalog = schema::build_ssb_catalog(spec.ssb);
    const auto& t = catalog.table(table);
    if (!t.find_column(column)) return std::nullopt;
    return ColumnDomain{date_attribute(spec, column, cal.start, cal.end), {}};
  }
  return std::nullopt;
}

std::optional<ColumnDomain> attribute_domain_via(const GenSpec& spec, std::string_view fact_fk,
                                                 std::string_view table, std::string_view column) {
  if (iequals(table, spec.ssb.date_table_name)) {
    auto w = order_window(spec.calendar);
    if (iequals(fact_fk, "LO_ORDERDATE")) {
      return ColumnDomain{date_attribute(spec, to_upper(column), w.first, w.last), {}};
    }
    if (iequals(fact_fk, "LO_COMMITDATE")) {
      return ColumnDomain{
          date_attribute(spec, to_upper(column), w.first + w.min_lag, w.last + w.max_lag), {}};
    }
  }
  return declared_domain(spec, table, column);
}

UniformityReport chi_square_uniform(std::string_view column, const std::vector<Value>& observations,
                                    const std::vector<Value>& domain) {
  if (domain.empty()) fail(ErrorKind::kInvalidArgument, fmt::format("column {}: empty domain", column));
  std::map<std::string, double> weight;
  for (const auto& v : domain) weight[domain_key(v)] += 1.0;
  std::map<std::string, std::int64_t> observed;
  UniformityReport r;
  r.column = std::string(column);
  r.observations = static_cast<std::int64_t>(observations.size());
  r.categories = static_cast<std::int64_t>(weight.size());
  for (const auto& v : observations) {
    auto k = domain_key(v);
    if (!weight.contains(k)) {
      ++r.out_of_domain;
      continue;
    }
    ++observed[k];
  }
  if (r.out_of_domain > 0) {
    r.statistic = std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
    return r;
  }
  auto n = static_cast<double>(observations.size());
  auto total_weight = static_cast<double>(domain.size());
  double stat = 0.0;
  for (const auto& [k, w] : weight) {
    double expected = n * w / total_weight;
    auto it = observed.find(k);
    double o = it == observed.end() ? 0.0 : static_cast<double>(it->second);
    if (expected > 0) stat += (o - expected) * (o - expected) / expected;
  }
  r.statistic = stat;
  if (r.categories <= 1 || n == 0) {
    r.p_value = 1.0;
    return r;
  }
  boost::math::chi_squared dist(static_cast<double>(r.categories - 1));
  r.p_value = boost::math::cdf(boost::math::complement(dist, stat));
  return r;
}

UniformityReport uniformity_report(const GenSpec& spec, const std::filesystem::path& tbl_file,
                                   std::string_view table_name, std::string_view column) {
  auto domain = declared_domain(spec, table_name, column);
  if (!domain) {
    fail(ErrorKind::kInvalidArgument,
         fmt::format("column {}.{} has no declared finite domain", table_name, column));
  }
  auto catalog = schema::build_ssb_catalog(spec.ssb);
  const auto& table = catalog.table(table_name);
  auto stored = table.stored_columns();
  auto position = [&](std::string_view name) {
    for (std::size_t i = 0; i < stored.size(); ++i) {
      if (iequals(stored[i]->name, name)) return i;
    }
    fail(ErrorKind::kNotFound, fmt::format("{} is not a stored column of {}", name, table.name));
  };
  auto col = position(column);
  std::optional<std::size_t> grain;
  if (domain->grain_key) grain = position(*domain->grain_key);

  std::vector<Value> observations;
  std::set<std::string> seen;
  TblReader reader(table, tbl_file);
  while (auto row = reader.next()) {
    if (grain && !seen.insert(render((*row)[*grain])).second) continue;
    observations.push_back(std::move((*row)[col]));
  }
  return chi_square_uniform(to_upper(column), observations, domain->values);
}

} // namespace ssbkit::datagen

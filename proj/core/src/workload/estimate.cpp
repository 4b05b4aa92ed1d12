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

#include "ssbkit/workload/estimate.hpp"

#include <map>
#include <set>

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/datagen/domains.hpp"
#include "ssbkit/datagen/generator.hpp"
#include "ssbkit/datagen/hierarchy.hpp"
#include "ssbkit/workload/eval.hpp"

namespace ssbkit::workload {

namespace {

struct DomainRows {
  std::vector<std::string> columns;
  std::vector<std::vector<Datum>> rows;
};

class VectorAccessor final : public RowAccessor {
 public:
  explicit VectorAccessor(const std::vector<Datum>& row) : row_(row) {}
  Datum column(int slot) const override { return row_[static_cast<std::size_t>(slot)]; }

 private:
  const std::vector<Datum>& row_;
};

bool ends_with_any(const std::string& col, std::initializer_list<std::string_view> suffixes) {
  for (auto s : suffixes) {
    if (col.ends_with(s)) return true;
  }
  return false;
}

DomainRows single_column(const std::string& column, const std::optional<datagen::ColumnDomain>& d) {
  DomainRows out;
  if (!d) return out;
  out.columns = {column};
  for (const auto& v : d->values) out.rows.push_back({to_datum(v)});
  return out;
}

DomainRows date_rows(const datagen::GenSpec& data, const schema::TableDef& table, std::string_view fk) {
  auto w = datagen::order_window(data.calendar);
  Date first = data.calendar.start;
  Date last = data.calendar.end;
  if (iequals(fk, "LO_ORDERDATE")) {
    first = w.first;
    last = w.last;
  } else if (iequals(fk, "LO_COMMITDATE")) {
    first = w.first + w.min_lag;
    last = w.last + w.max_lag;
  }
  DomainRows out;
  for (const auto& c : table.columns) out.columns.push_back(c.name);
  auto stream = datagen::generate_table(data, table.name);
  while (auto chunk = stream->next_chunk()) {
    for (const auto& row : *chunk) {
      auto d = Date::from_key(std::get<std::int64_t>(row[0]));
      if (d < first || d > last) continue;
      std::vector<Datum> r;
      r.reserve(row.size());
      for (const auto& v : row) r.push_back(to_datum(v));
      out.rows.push_back(std::move(r));
    }
  }
  return out;
}

} // namespace

FilterEstimate estimate_filter_factor(const SelectStmt& stmt, const datagen::GenSpec& data) {
  auto catalog = schema::build_ssb_catalog(data.ssb);
  const auto& fact = *catalog.fact_table();
  const auto& date_table = catalog.table(data.ssb.date_table_name);

  std::map<std::string, std::string> aliases;
  for (const auto& ref : stmt.from) {
    if (ref.derived) continue;
    if (const auto* t = catalog.find_table(ref.name)) aliases[ref.alias.empty() ? t->name : ref.alias] = t->name;
  }
  auto owner = [&](const Expr& col) -> const schema::TableDef* {
    if (!col.qualifier.empty()) {
      auto it = aliases.find(col.qualifier);
      if (it == aliases.end()) return nullptr;
      const auto& t = catalog.table(it->second);
      return t.find_column(col.name) ? &t : nullptr;
    }
    const auto* t = catalog.owner_of(col.name);
    return t && aliases.contains(t->name) ? t : nullptr;
  };
  auto group_of = [&](const schema::TableDef& t, const std::string& column) {
    if (&t == &date_table) return t.name;
    if ((t.name == "CUSTOMER" || t.name == "SUPPLIER") && ends_with_any(column, {"_CITY", "_NATION", "_REGION"})) {
      return t.name + ".geography";
    }
    if (t.name == "PART" && (column == "P_MFGR" || column == "P_CATEGORY" || column == "P_BRAND1")) {
      return t.name + ".hierarchy";
    }
    return t.name + "." + column;
  };

  struct Group {
    const schema::TableDef* table = nullptr;
    std::string column;
    std::vector<ExprPtr> predicates;
  };
  std::map<std::string, Group> groups;
  std::map<std::string, std::string> fk_of;
  FilterEstimate est;

  for (const auto& c : split_conjuncts(stmt.where)) {
    auto cols = column_refs(*c);
    if (c->kind == Expr::Kind::kBinary && c->op == "=" && c->args[0]->kind == Expr::Kind::kColumn &&
        c->args[1]->kind == Expr::Kind::kColumn) {
      const auto* a = owner(*c->args[0]);
      const auto* b = owner(*c->args[1]);
      if (a && b && a != b) {
        if (a == &fact) fk_of[b->name] = to_upper(c->args[0]->name);
        if (b == &fact) fk_of[a->name] = to_upper(c->args[1]->name);
        continue;
      }
    }
    std::set<std::string> keys;
    const schema::TableDef* table = nullptr;
    std::string column;
    bool resolvable = !contains_subquery(*c);
    for (const auto* col : cols) {
      const auto* t = owner(*col);
      if (!t) {
        resolvable = false;
        break;
      }
      table = t;
      column = to_upper(col->name);
      keys.insert(group_of(*t, column));
    }
    if (!resolvable || keys.size() != 1) {
      PredicateFactor pf;
      pf.group = keys.empty() ? "unresolved" : join(std::vector<std::string>(keys.begin(), keys.end()), "+");
      pf.predicates = {to_sql(*c)};
      pf.fraction = kUnknownPredicateFraction;
      pf.assumed = true;
      est.factors.push_back(std::move(pf));
      continue;
    }
    auto& g = groups[*keys.begin()];
    g.table = table;
    g.column = column;
    g.predicates.push_back(c);
  }

  for (const auto& [key, g] : groups) {
    DomainRows domain;
    const auto& t = *g.table;
    if (&t == &date_table) {
      auto it = fk_of.find(t.name);
      domain = date_rows(data, t, it == fk_of.end() ? "LO_ORDERDATE" : it->second);
    } else if (key.ends_with(".geography")) {
      auto prefix = t.name.substr(0, 1) + "_";
      domain.columns = {prefix + "CITY", prefix + "NATION", prefix + "REGION"};
      for (int i = 0; i < data.geography.member_count(); ++i) {
        auto m = datagen::geography_member(data.geography, i);
        domain.rows.push_back({m.city, m.nation, m.region});
      }
    } else if (key.ends_with(".hierarchy")) {
      domain.columns = {"P_MFGR", "P_CATEGORY", "P_BRAND1"};
      for (int i = 0; i < data.part_hierarchy.member_count(); ++i) {
        auto m = datagen::part_member(data.part_hierarchy, i);
        domain.rows.push_back({m.mfgr, m.category, m.brand});
      }
    } else {
      domain = single_column(g.column, datagen::declared_domain(data, t.name, g.column));
    }

    PredicateFactor pf;
    pf.group = key;
    for (const auto& p : g.predicates) pf.predicates.push_back(to_sql(*p));
    if (domain.rows.empty()) {
      pf.assumed = true;
      pf.fraction = 1.0;
      for (std::size_t i = 0; i < g.predicates.size(); ++i) pf.fraction *= kUnknownPredicateFraction;
      est.factors.push_back(std::move(pf));
      continue;
    }
    std::vector<ExprPtr> bound;
    for (const auto& p : g.predicates) {
      auto e = clone(p);
      bind_columns(*e, [&](const Expr& col) {
        for (std::size_t i = 0; i < domain.columns.size(); ++i) {
          if (iequals(domain.columns[i], col.name)) return static_cast<int>(i);
        }
        fail(ErrorKind::kInvalidArgument, fmt::format("column {} outside group {}", col.name, key));
      });
      bound.push_back(std::move(e));
    }
    std::int64_t hits = 0;
    for (const auto& row : domain.rows) {
      VectorAccessor acc(row);
      bool ok = true;
      for (const auto& e : bound) {
        if (!is_true(evaluate(*e, acc))) {
          ok = false;
          break;
        }
      }
      hits += ok;
    }
    pf.fraction = static_cast<double>(hits) / static_cast<double>(domain.rows.size());
    est.factors.push_back(std::move(pf));
  }

  for (const auto& f : est.factors) est.factor *= f.fraction;
  return est;
}

double estimated_filter_factor(std::string_view sql, const datagen::GenSpec& data) {
  return estimate_filter_factor(parse_select(sql), data).factor;
}

} // namespace ssbkit::workload

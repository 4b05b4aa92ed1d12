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

#include "ssbkit/harness/advisor.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/workload/sql.hpp"

namespace ssbkit::harness {

namespace {

using workload::Expr;
using workload::SelectStmt;

using AdviceKey = std::pair<std::string, std::vector<std::string>>;

struct Collector {
  const schema::SchemaCatalog& catalog;
  std::map<AdviceKey, std::vector<std::string>> advice;

  void add(const std::string& table, std::vector<std::string> columns, const std::string& origin) {
    auto& origins = advice[{table, std::move(columns)}];
    if (std::ranges::find(origins, origin) == origins.end()) origins.push_back(origin);
  }

  const schema::TableDef* resolve(const Expr& col, const std::vector<std::map<std::string, std::string>>& scopes) {
    if (!col.qualifier.empty()) {
      for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
        if (auto a = it->find(col.qualifier); a != it->end()) {
          const auto& t = catalog.table(a->second);
          return t.find_column(col.name) ? &t : nullptr;
        }
      }
      return nullptr;
    }
    return catalog.owner_of(col.name);
  }

  void scan(const SelectStmt& s, std::vector<std::map<std::string, std::string>> scopes, const std::string& origin) {
    std::map<std::string, std::string> scope;
    for (const auto& ref : s.from) {
      if (ref.derived) continue;
      if (const auto* t = catalog.find_table(ref.name)) {
        scope[ref.alias.empty() ? t->name : ref.alias] = t->name;
        scope[t->name] = t->name;
      }
    }
    scopes.push_back(std::move(scope));

    std::map<std::string, std::vector<std::string>> restricted;
    for (const auto& c : workload::split_conjuncts(s.where)) {
      bool join = c->kind == Expr::Kind::kBinary && c->op == "=" && c->args[0]->kind == Expr::Kind::kColumn &&
                  c->args[1]->kind == Expr::Kind::kColumn;
      for (const auto* col : workload::column_refs(*c)) {
        const auto* t = resolve(*col, scopes);
        if (!t) continue;
        auto name = t->find_column(col->name)->name;
        add(t->name, {name}, origin);
        if (join) continue;
        auto& cols = restricted[t->name];
        if (std::ranges::find(cols, name) == cols.end()) cols.push_back(name);
      }
    }
    for (const auto& [table, cols] : restricted) {
      if (cols.size() >= 2) add(table, cols, origin);
    }
    for (const auto* nested : direct_children(s)) scan(*nested, scopes, origin);
  }

  static std::vector<const SelectStmt*> direct_children(const SelectStmt& s) {
    // nested_selects() is recursive; keep only the first level so scopes nest.
    auto all = workload::nested_selects(s);
    std::vector<const SelectStmt*> out;
    for (const auto* candidate : all) {
      bool deeper = std::ranges::any_of(all, [&](const SelectStmt* other) {
        if (other == candidate) return false;
        auto inner = workload::nested_selects(*other);
        return std::ranges::find(inner, candidate) != inner.end();
      });
      if (!deeper) out.push_back(candidate);
    }
    return out;
  }

  // Fallback for SQL outside the parser's subset: every catalog column
  // named after the first WHERE keyword.
  void scan_text(const std::string& sql, const std::string& origin) {
    auto upper = to_upper(sql);
    auto where = upper.find("WHERE");
    if (where == std::string::npos) return;
    static const std::regex ident("[A-Z_][A-Z0-9_]*");
    auto tail = upper.substr(where);
    for (auto it = std::sregex_iterator(tail.begin(), tail.end(), ident); it != std::sregex_iterator(); ++it) {
      if (const auto* t = catalog.owner_of(it->str())) add(t->name, {t->find_column(it->str())->name}, origin);
    }
  }
};

} // namespace

std::string IndexAdvice::name() const { return "IX_" + table + "_" + join(columns, "_"); }

nlohmann::json IndexAdvice::to_json() const {
  return {{"table", table}, {"columns", columns}, {"origins", origins}, {"name", name()}};
}

std::vector<IndexAdvice> advise_indices(const std::vector<workload::QueryInstance>& instances,
                                        const schema::SchemaCatalog& catalog) {
  Collector c{catalog, {}};
  for (const auto& q : instances) {
    try {
      c.scan(workload::parse_select(q.sql), {}, q.label());
    } catch (const Error&) {
      c.scan_text(q.sql, q.label());
    }
  }
  std::vector<IndexAdvice> out;
  for (auto& [key, origins] : c.advice) out.push_back({key.first, key.second, origins});
  return out;
}

} // namespace ssbkit::harness

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

#include "ssbkit/harness/reference_engine.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "engines.hpp"
#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/datagen/tbl.hpp"

namespace ssbkit::harness {

using workload::Datum;
using workload::Expr;
using workload::ExprPtr;
using workload::SelectStmt;

namespace {

struct Slot {
  std::size_t table = 0;
  const std::vector<Datum>* data = nullptr;
  std::string name;
};

class TupleAccessor final : public workload::RowAccessor {
 public:
  TupleAccessor(const std::vector<Slot>& slots, const std::uint32_t* tuple,
                const std::vector<Datum>* aggregates = nullptr)
      : slots_(slots), tuple_(tuple), aggregates_(aggregates) {}

  Datum column(int slot) const override {
    if (!tuple_) return Null{};
    const auto& s = slots_[static_cast<std::size_t>(slot)];
    return (*s.data)[tuple_[s.table]];
  }
  Datum aggregate(int slot) const override {
    if (!aggregates_) return workload::RowAccessor::aggregate(slot);
    return (*aggregates_)[static_cast<std::size_t>(slot)];
  }

 private:
  const std::vector<Slot>& slots_;
  const std::uint32_t* tuple_;
  const std::vector<Datum>* aggregates_;
};

std::string key_of(const Datum& d) {
  if (auto* i = std::get_if<std::int64_t>(&d)) return "i" + std::to_string(*i);
  if (auto* s = std::get_if<std::string>(&d)) return "s" + *s;
  return "n" + workload::canonical(d);
}

void collect_aggregates(Expr& e, std::vector<Expr*>& out) {
  if (workload::is_aggregate_call(e)) {
    e.slot = static_cast<int>(out.size());
    out.push_back(&e);
    return;
  }
  for (auto& a : e.args) {
    if (a) collect_aggregates(*a, out);
  }
}

struct Accumulator {
  Datum sum = Null{};
  Datum best = Null{};
  std::int64_t count = 0;
  std::set<std::string> seen;
};

void accumulate(Accumulator& acc, const Expr& agg, const workload::RowAccessor& row) {
  bool star = agg.args.empty() || agg.args[0]->kind == Expr::Kind::kStar;
  if (agg.op == "COUNT" && star) {
    ++acc.count;
    return;
  }
  auto v = workload::evaluate(*agg.args[0], row);
  if (std::holds_alternative<Null>(v)) return;
  if (agg.distinct && !acc.seen.insert(key_of(v)).second) return;
  ++acc.count;
  if (agg.op == "SUM" || agg.op == "AVG") {
    acc.sum = std::holds_alternative<Null>(acc.sum) ? v : workload::arithmetic("+", acc.sum, v);
  } else if (agg.op == "MIN" || agg.op == "MAX") {
    if (std::holds_alternative<Null>(acc.best)) {
      acc.best = v;
    } else {
      auto c = workload::compare(v, acc.best);
      if (c && ((agg.op == "MIN" && *c < 0) || (agg.op == "MAX" && *c > 0))) acc.best = v;
    }
  }
}

Datum finish(const Accumulator& acc, const Expr& agg) {
  if (agg.op == "COUNT") return acc.count;
  if (agg.op == "SUM") return acc.sum;
  if (agg.op == "AVG") {
    if (acc.count == 0) return Null{};
    return workload::arithmetic("/", workload::arithmetic("*", acc.sum, 1.0), static_cast<double>(acc.count));
  }
  return acc.best;
}

int order_compare(const Datum& a, const Datum& b) {
  bool na = std::holds_alternative<Null>(a);
  bool nb = std::holds_alternative<Null>(b);
  if (na || nb) return nb - na;  // NULLs sort first
  return *workload::compare(a, b);
}

} // namespace

struct ReferenceDatabase::Joined {
  ReferenceDatabase* db = nullptr;
  std::vector<StoredTable*> tables;
  std::vector<std::string> aliases;
  std::vector<Slot> slots;
  std::map<std::pair<std::size_t, std::string>, int> slot_index;
  std::size_t width = 0;
  std::vector<std::uint32_t> tuples;
  std::string plan;

  std::size_t count() const { return width == 0 ? 0 : tuples.size() / width; }
  const std::uint32_t* tuple(std::size_t i) const { return tuples.data() + i * width; }

  std::size_t resolve(const Expr& col) const {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      bool name_ok = col.qualifier.empty() || iequals(col.qualifier, aliases[i]);
      if (!name_ok || !tables[i]->def->find_column(col.name)) continue;
      if (found) fail(ErrorKind::kInvalidArgument, fmt::format("ambiguous column {}", workload::to_sql(col)));
      found = i;
    }
    if (!found) fail(ErrorKind::kInvalidArgument, fmt::format("unknown column {}", workload::to_sql(col)));
    return *found;
  }

  void bind(Expr& e) {
    workload::bind_columns(e, [&](const Expr& col) {
      auto t = resolve(col);
      auto name = tables[t]->def->find_column(col.name)->name;
      auto key = std::pair(t, name);
      if (auto it = slot_index.find(key); it != slot_index.end()) return it->second;
      slots.push_back({t, &db->column(*tables[t], name), aliases[t] + "." + name});
      int slot = static_cast<int>(slots.size() - 1);
      slot_index.emplace(key, slot);
      return slot;
    });
  }
};

ReferenceDatabase::ReferenceDatabase(schema::SchemaCatalog catalog) : catalog_(std::move(catalog)) {}

void ReferenceDatabase::attach(std::string_view table, const std::filesystem::path& file) {
  const auto& def = catalog_.table(table);
  StoredTable t;
  t.def = &def;
  t.file = file;
  tables_[def.name] = std::move(t);
}

bool ReferenceDatabase::attached(std::string_view table) const {
  const auto* def = catalog_.find_table(table);
  return def && tables_.contains(def->name);
}

ReferenceDatabase::StoredTable& ReferenceDatabase::table(std::string_view name) {
  const auto* def = catalog_.find_table(name);
  if (!def) fail(ErrorKind::kNotFound, fmt::format("reference: unknown table {}", name));
  auto it = tables_.find(def->name);
  if (it == tables_.end()) fail(ErrorKind::kNotFound, fmt::format("reference: table {} has no data", def->name));
  return it->second;
}

std::int64_t ReferenceDatabase::row_count(std::string_view name) {
  auto& t = table(name);
  if (!t.rows) t.rows = datagen::count_lines(t.file);
  return *t.rows;
}

void ReferenceDatabase::load_columns(StoredTable& t, const std::vector<std::string>& names) {
  std::vector<std::string> stored_wanted;
  std::vector<const schema::ColumnDef*> generated;
  for (const auto& n : names) {
    if (t.columns.contains(n)) continue;
    const auto* c = t.def->find_column(n);
    if (!c) fail(ErrorKind::kNotFound, fmt::format("reference: {} has no column {}", t.def->name, n));
    if (c->is_stored()) {
      stored_wanted.push_back(c->name);
    } else {
      generated.push_back(c);
    }
  }
  if (!stored_wanted.empty()) {
    auto stored = t.def->stored_columns();
    std::vector<std::pair<std::size_t, std::vector<Datum>*>> targets;
    for (const auto& n : stored_wanted) {
      auto pos = std::ranges::find_if(stored, [&](const auto* c) { return c->name == n; }) - stored.begin();
      targets.emplace_back(static_cast<std::size_t>(pos), &t.columns[n]);
    }
    datagen::TblReader reader(*t.def, t.file);
    std::int64_t rows = 0;
    while (auto row = reader.next()) {
      for (auto& [pos, out] : targets) out->push_back(workload::to_datum((*row)[pos]));
      ++rows;
    }
    t.rows = rows;
  }
  for (const auto* c : generated) {
    auto expr = workload::parse_select("SELECT " + *c->generated_expr).items.at(0).expr;
    std::vector<std::string> deps;
    for (const auto* ref : workload::column_refs(*expr)) deps.push_back(to_upper(ref->name));
    load_columns(t, deps);
    std::vector<Slot> slots;
    workload::bind_columns(*expr, [&](const Expr& ref) {
      slots.push_back({0, &t.columns.at(to_upper(ref.name)), to_upper(ref.name)});
      return static_cast<int>(slots.size() - 1);
    });
    std::vector<Datum> values;
    auto n = static_cast<std::uint32_t>(row_count(t.def->name));
    values.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      TupleAccessor acc(slots, &i);
      values.push_back(workload::evaluate(*expr, acc));
    }
    t.columns[c->name] = std::move(values);
  }
}

const std::vector<Datum>& ReferenceDatabase::column(StoredTable& t, const std::string& name) {
  load_columns(t, {name});
  return t.columns.at(name);
}

ReferenceDatabase::Joined ReferenceDatabase::join(const SelectStmt& stmt) {
  if (!workload::nested_selects(stmt).empty()) {
    fail(ErrorKind::kInvalidArgument, "reference evaluator does not support sub-queries");
  }
  Joined j;
  j.db = this;
  for (const auto& ref : stmt.from) {
    j.tables.push_back(&table(ref.name));
    j.aliases.push_back(ref.alias.empty() ? j.tables.back()->def->name : ref.alias);
  }
  j.width = j.tables.size();
  if (j.width == 0) fail(ErrorKind::kInvalidArgument, "reference evaluator needs a FROM clause");

  // Classify WHERE conjuncts.
  std::vector<std::vector<ExprPtr>> filters(j.width);
  std::vector<ExprPtr> residual;
  std::vector<ExprPtr> constants;
  struct Edge {
    std::size_t a, b;
    int slot_a, slot_b;
  };
  std::vector<Edge> edges;
  for (const auto& c : workload::split_conjuncts(stmt.where)) {
    auto e = workload::clone(c);
    std::set<std::size_t> used;
    for (const auto* col : workload::column_refs(*e)) used.insert(j.resolve(*col));
    j.bind(*e);
    if (used.empty()) {
      constants.push_back(e);
    } else if (used.size() == 1) {
      filters[*used.begin()].push_back(e);
    } else if (used.size() == 2 && e->kind == Expr::Kind::kBinary && e->op == "=" &&
               e->args[0]->kind == Expr::Kind::kColumn && e->args[1]->kind == Expr::Kind::kColumn) {
      auto sa = e->args[0]->slot;
      auto sb = e->args[1]->slot;
      edges.push_back({j.slots[static_cast<std::size_t>(sa)].table, j.slots[static_cast<std::size_t>(sb)].table, sa, sb});
    } else {
      residual.push_back(e);
    }
  }

  for (const auto& c : constants) {
    TupleAccessor acc(j.slots, nullptr);
    if (!workload::is_true(workload::evaluate(*c, acc))) {
      j.plan = "constant predicate is false";
      return j;
    }
  }

  // Per-table candidate rows.
  std::vector<std::vector<std::uint32_t>> candidates(j.width);
  std::vector<std::uint32_t> scratch(j.width, 0);
  for (std::size_t t = 0; t < j.width; ++t) {
    auto n = static_cast<std::uint32_t>(row_count(j.tables[t]->def->name));
    auto& out = candidates[t];
    for (std::uint32_t r = 0; r < n; ++r) {
      scratch[t] = r;
      TupleAccessor acc(j.slots, scratch.data());
      bool ok = std::ranges::all_of(filters[t], [&](const ExprPtr& f) {
        return workload::is_true(workload::evaluate(*f, acc));
      });
      if (ok) out.push_back(r);
    }
  }

  // Left-deep hash joins starting from the largest table.
  std::vector<bool> joined(j.width, false);
  std::size_t start = 0;
  for (std::size_t t = 1; t < j.width; ++t) {
    if (row_count(j.tables[t]->def->name) > row_count(j.tables[start]->def->name)) start = t;
  }
  joined[start] = true;
  j.plan = fmt::format("scan {} ({} of {} rows pass filters)", j.aliases[start], candidates[start].size(),
                       row_count(j.tables[start]->def->name));
  for (auto r : candidates[start]) {
    std::vector<std::uint32_t> tuple(j.width, 0);
    tuple[start] = r;
    j.tuples.insert(j.tuples.end(), tuple.begin(), tuple.end());
  }
  std::vector<bool> edge_used(edges.size(), false);

  for (std::size_t step = 1; step < j.width; ++step) {
    std::optional<std::size_t> next;
    std::optional<std::size_t> via;
    for (std::size_t e = 0; e < edges.size() && !next; ++e) {
      if (joined[edges[e].a] != joined[edges[e].b]) {
        next = joined[edges[e].a] ? edges[e].b : edges[e].a;
        via = e;
      }
    }
    if (!next) {
      next = static_cast<std::size_t>(std::ranges::find(joined, false) - joined.begin());
    }
    std::size_t t = *next;
    std::vector<std::uint32_t> out;
    if (via) {
      const auto& edge = edges[*via];
      edge_used[*via] = true;
      int build_slot = edge.a == t ? edge.slot_a : edge.slot_b;
      int probe_slot = edge.a == t ? edge.slot_b : edge.slot_a;
      const auto& build = *j.slots[static_cast<std::size_t>(build_slot)].data;
      const auto& probe_slot_def = j.slots[static_cast<std::size_t>(probe_slot)];
      std::unordered_map<std::string, std::vector<std::uint32_t>> hash;
      for (auto r : candidates[t]) {
        if (!std::holds_alternative<Null>(build[r])) hash[key_of(build[r])].push_back(r);
      }
      for (std::size_t i = 0; i < j.count(); ++i) {
        const auto* tuple = j.tuple(i);
        const auto& v = (*probe_slot_def.data)[tuple[probe_slot_def.table]];
        if (std::holds_alternative<Null>(v)) continue;
        auto it = hash.find(key_of(v));
        if (it == hash.end()) continue;
        for (auto r : it->second) {
          out.insert(out.end(), tuple, tuple + j.width);
          out[out.size() - j.width + t] = r;
        }
      }
      j.plan += fmt::format("\nhash join {} ({} candidates) on {} = {}", j.aliases[t], candidates[t].size(),
                            j.slots[static_cast<std::size_t>(build_slot)].name, probe_slot_def.name);
    } else {
      for (std::size_t i = 0; i < j.count(); ++i) {
        const auto* tuple = j.tuple(i);
        for (auto r : candidates[t]) {
          out.insert(out.end(), tuple, tuple + j.width);
          out[out.size() - j.width + t] = r;
        }
      }
      j.plan += fmt::format("\ncross join {} ({} candidates)", j.aliases[t], candidates[t].size());
    }
    j.tuples = std::move(out);
    joined[t] = true;
  }

  // Remaining equality edges and other multi-table predicates.
  std::vector<ExprPtr> post;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edge_used[e]) continue;
    auto eq = std::make_shared<Expr>();
    eq->kind = Expr::Kind::kBinary;
    eq->op = "=";
    auto a = std::make_shared<Expr>();
    a->kind = Expr::Kind::kColumn;
    a->slot = edges[e].slot_a;
    auto b = std::make_shared<Expr>(*a);
    b->slot = edges[e].slot_b;
    eq->args = {a, b};
    post.push_back(eq);
  }
  post.insert(post.end(), residual.begin(), residual.end());
  if (!post.empty()) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < j.count(); ++i) {
      TupleAccessor acc(j.slots, j.tuple(i));
      bool ok = std::ranges::all_of(post, [&](const ExprPtr& f) { return workload::is_true(workload::evaluate(*f, acc)); });
      if (ok) out.insert(out.end(), j.tuple(i), j.tuple(i) + j.width);
    }
    j.tuples = std::move(out);
    j.plan += fmt::format("\nfilter {} residual predicate(s)", post.size());
  }
  j.plan += fmt::format("\n{} joined rows", j.count());
  return j;
}

ResultSet ReferenceDatabase::run(const SelectStmt& stmt) {
  auto j = join(stmt);

  std::vector<ExprPtr> items;
  ResultSet out;
  for (const auto& item : stmt.items) {
    if (item.expr->kind == Expr::Kind::kStar) {
      fail(ErrorKind::kInvalidArgument, "reference evaluator does not expand SELECT *");
    }
    auto e = workload::clone(item.expr);
    j.bind(*e);
    items.push_back(e);
    out.columns.push_back(item.alias.empty() ? to_lower(workload::to_sql(*item.expr)) : to_lower(item.alias));
  }
  std::vector<ExprPtr> groups;
  for (const auto& g : stmt.group_by) {
    auto e = workload::clone(g);
    j.bind(*e);
    groups.push_back(e);
  }
  ExprPtr having;
  if (stmt.having) {
    having = workload::clone(stmt.having);
    j.bind(*having);
  }
  // ORDER BY entries are an output column index or a bound expression.
  struct OrderKey {
    std::optional<std::size_t> output;
    ExprPtr expr;
    bool descending;
  };
  std::vector<OrderKey> order;
  for (const auto& o : stmt.order_by) {
    OrderKey k{std::nullopt, nullptr, o.descending};
    if (o.expr->kind == Expr::Kind::kColumn && o.expr->qualifier.empty()) {
      for (std::size_t i = 0; i < stmt.items.size(); ++i) {
        if (iequals(stmt.items[i].alias, o.expr->name)) k.output = i;
      }
    }
    if (o.expr->kind == Expr::Kind::kLiteral && std::holds_alternative<std::int64_t>(o.expr->literal)) {
      auto ordinal = std::get<std::int64_t>(o.expr->literal);
      if (ordinal < 1 || ordinal > static_cast<std::int64_t>(items.size())) {
        fail(ErrorKind::kInvalidArgument, fmt::format("ORDER BY position {} out of range", ordinal));
      }
      k.output = static_cast<std::size_t>(ordinal - 1);
    }
    if (!k.output) {
      k.expr = workload::clone(o.expr);
      j.bind(*k.expr);
    }
    order.push_back(k);
  }

  std::vector<Expr*> aggregates;
  for (auto& e : items) collect_aggregates(*e, aggregates);
  if (having) collect_aggregates(*having, aggregates);
  for (auto& k : order) {
    if (k.expr) collect_aggregates(*k.expr, aggregates);
  }
  bool grouped = !groups.empty() || !aggregates.empty();

  struct OutRow {
    std::vector<Datum> values;
    std::vector<Datum> keys;
  };
  std::vector<OutRow> rows;
  auto emit = [&](const workload::RowAccessor& acc) {
    if (having && !workload::is_true(workload::evaluate(*having, acc))) return;
    OutRow r;
    for (const auto& e : items) r.values.push_back(workload::evaluate(*e, acc));
    for (const auto& k : order) r.keys.push_back(k.output ? r.values[*k.output] : workload::evaluate(*k.expr, acc));
    rows.push_back(std::move(r));
  };

  if (grouped) {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::size_t> representative;
    std::vector<std::vector<Accumulator>> accs;
    for (std::size_t i = 0; i < j.count(); ++i) {
      TupleAccessor acc(j.slots, j.tuple(i));
      std::string key;
      for (const auto& g : groups) {
        key += key_of(workload::evaluate(*g, acc));
        key += '\x1f';
      }
      auto [it, inserted] = index.emplace(key, representative.size());
      if (inserted) {
        representative.push_back(i);
        accs.emplace_back(aggregates.size());
      }
      auto& group_accs = accs[it->second];
      for (std::size_t a = 0; a < aggregates.size(); ++a) accumulate(group_accs[a], *aggregates[a], acc);
    }
    if (groups.empty() && representative.empty()) {
      accs.emplace_back(aggregates.size());
      std::vector<Datum> values;
      for (std::size_t a = 0; a < aggregates.size(); ++a) values.push_back(finish(accs[0][a], *aggregates[a]));
      emit(TupleAccessor(j.slots, nullptr, &values));
    }
    for (std::size_t g = 0; g < representative.size(); ++g) {
      std::vector<Datum> values;
      for (std::size_t a = 0; a < aggregates.size(); ++a) values.push_back(finish(accs[g][a], *aggregates[a]));
      emit(TupleAccessor(j.slots, j.tuple(representative[g]), &values));
    }
  } else {
    for (std::size_t i = 0; i < j.count(); ++i) emit(TupleAccessor(j.slots, j.tuple(i)));
  }

  if (!order.empty()) {
    std::ranges::stable_sort(rows, [&](const OutRow& a, const OutRow& b) {
      for (std::size_t k = 0; k < order.size(); ++k) {
        int c = order_compare(a.keys[k], b.keys[k]);
        if (c != 0) return order[k].descending ? c > 0 : c < 0;
      }
      return false;
    });
  }
  std::set<std::vector<std::string>> seen;
  for (const auto& r : rows) {
    std::vector<std::string> text;
    for (const auto& v : r.values) text.push_back(workload::canonical(v));
    if (stmt.distinct && !seen.insert(text).second) continue;
    out.rows.push_back(std::move(text));
    if (stmt.limit && out.row_count() >= *stmt.limit) break;
  }
  return out;
}

ResultSet ReferenceDatabase::run(std::string_view sql) { return run(workload::parse_select(sql)); }

std::int64_t ReferenceDatabase::count_matching_rows(const SelectStmt& stmt) {
  return static_cast<std::int64_t>(join(stmt).count());
}

std::int64_t ReferenceDatabase::count_matching_rows(std::string_view sql) {
  return count_matching_rows(workload::parse_select(sql));
}

std::string ReferenceDatabase::describe(const SelectStmt& stmt) { return join(stmt).plan; }

namespace detail {

namespace {

class ReferenceEngine final : public EngineAdapter {
 public:
  std::string id() const override { return "reference"; }
  std::string version() const override { return "ssbkit reference evaluator 1"; }
  EngineCapabilities capabilities() const override { return {true, false, true, "DESCRIBE"}; }
  schema::DdlOptions ddl_options(schema::KeyClauses keys) const override {
    return schema::dialect_options("neutral", keys);
  }

  void create_schema(const schema::SchemaCatalog& catalog, schema::KeyClauses) override {
    db_ = std::make_unique<ReferenceDatabase>(catalog);
  }
  void execute(std::string_view sql) override {
    auto head = to_upper(trim(sql).substr(0, 12));
    if (head.starts_with("CREATE INDEX")) return;
    fail(ErrorKind::kEngine, "reference: only queries and CREATE INDEX are supported");
  }
  std::int64_t bulk_load(const schema::TableDef& table, const std::filesystem::path& file) override {
    datagen::TblReader reader(table, file);
    std::int64_t rows = 0;
    while (reader.next()) ++rows;
    db().attach(table.name, file);
    return rows;
  }
  std::int64_t count_rows(std::string_view table) override { return db().row_count(table); }
  ResultSet query(std::string_view sql) override {
    try {
      return db().run(sql);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kEngine) throw;
      fail(ErrorKind::kEngine, fmt::format("reference: {}", e.what()));
    }
  }
  std::string explain(std::string_view sql) override { return db().describe(workload::parse_select(sql)); }
  void create_index(std::string_view, std::string_view, const std::vector<std::string>&) override {}

 private:
  ReferenceDatabase& db() {
    if (!db_) fail(ErrorKind::kEngine, "reference: schema not created");
    return *db_;
  }
  std::unique_ptr<ReferenceDatabase> db_;
};

} // namespace

std::unique_ptr<EngineAdapter> make_reference_engine(const ConnectionParams&) {
  return std::make_unique<ReferenceEngine>();
}

} // namespace detail

} // namespace ssbkit::harness

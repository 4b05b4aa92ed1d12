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


#include <algorithm>
#include <fstream>
#include <numeric>
#include <regex>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/harness/advisor.hpp"
#include "ssbkit/harness/engine.hpp"
#include "ssbkit/harness/loader.hpp"
#include "ssbkit/harness/runner.hpp"
#include "ssbkit/schema/catalog.hpp"
#include "ssbkit/workload/template.hpp"

namespace ssbkit::harness {
namespace {

using datagen::Benchmark;
using ssbkit::testing::shared_dataset;
using ssbkit::testing::TempDir;
using workload::QueryInstance;

QueryInstance ssb(std::string_view id, std::optional<std::uint64_t> seed = std::nullopt) {
  return workload::instantiate(workload::find_template(id), seed, shared_dataset().spec);
}

std::vector<QueryInstance> all_defaults() {
  std::vector<QueryInstance> out;
  for (const auto& t : workload::flight_catalog()) out.push_back(ssb(t.id));
  return out;
}

std::unique_ptr<EngineAdapter> loaded(std::string_view id) {
  const auto& ds = shared_dataset();
  auto catalog = schema::build_ssb_catalog(ds.spec.ssb);
  auto engine = make_engine(id);
  engine->create_schema(catalog, schema::KeyClauses::kPrimaryOnly);
  load(*engine, catalog, dataset_files(ds.dir.path(), Benchmark::kSsb, catalog));
  return engine;
}

// Intersection-over-union of restricted dimension sets.
double overlap(const QueryInstance& a, const QueryInstance& b) {
  std::set<workload::Dimension> both;
  std::set<workload::Dimension> any = a.dimensions;
  any.insert(b.dimensions.begin(), b.dimensions.end());
  std::set_intersection(a.dimensions.begin(), a.dimensions.end(), b.dimensions.begin(), b.dimensions.end(),
                        std::inserter(both, both.end()));
  return any.empty() ? 0.0 : static_cast<double>(both.size()) / static_cast<double>(any.size());
}

int disjoint_pairs(const std::vector<QueryInstance>& order) {
  int n = 0;
  for (std::size_t i = 1; i < order.size(); ++i) n += overlap(order[i - 1], order[i]) == 0.0;
  return n;
}

double total_overlap(const std::vector<QueryInstance>& order) {
  double s = 0;
  for (std::size_t i = 1; i < order.size(); ++i) s += overlap(order[i - 1], order[i]);
  return s;
}

std::vector<std::string> labels(const std::vector<QueryInstance>& v) {
  std::vector<std::string> out;
  for (const auto& q : v) out.push_back(q.label());
  return out;
}

// Columns named in WHERE clauses, extracted from the rendered text only.
std::set<std::string> where_columns(const std::string& sql) {
  auto upper = to_upper(sql);
  auto where = upper.find("WHERE");
  auto end = upper.find("GROUP BY");
  if (where == std::string::npos) return {};
  auto clause = upper.substr(where, end == std::string::npos ? std::string::npos : end - where);
  std::set<std::string> out;
  std::regex column(R"(\b(LO|C|S|P|D)_[A-Z0-9]+\b)");
  for (std::sregex_iterator it(clause.begin(), clause.end(), column), stop; it != stop; ++it) out.insert(it->str());
  return out;
}

TEST(Engine, RegistryAndUnknownEngine) {
  EXPECT_EQ(engine_ids(), (std::vector<std::string>{"sqlite", "reference"}));
  EXPECT_THROW(make_engine("oracle"), Error);
  EXPECT_EQ(split_statements("a;\n\nb ;  ").size(), 2u);
}

TEST(Loader, LoadsSsbTablesWithMatchingCounts) {
  const auto& ds = shared_dataset();
  auto catalog = schema::build_ssb_catalog(ds.spec.ssb);
  auto engine = make_engine("sqlite");
  engine->create_schema(catalog, schema::KeyClauses::kPrimaryOnly);
  auto report = load(*engine, catalog, dataset_files(ds.dir.path(), Benchmark::kSsb, catalog));
  ASSERT_EQ(report.tables.size(), 5u);
  for (const auto& t : report.tables) {
    EXPECT_EQ(t.loaded_rows, t.file_rows) << t.table;
    EXPECT_EQ(engine->count_rows(t.table), t.file_rows) << t.table;
    EXPECT_GE(t.millis, 0.0);
  }
  EXPECT_EQ(engine->count_rows("LINEORDER"), 60'000);
  EXPECT_GE(report.total_ms, 0.0);
  EXPECT_EQ(report.to_json().at("tables").size(), 5u);
}

TEST(Loader, EmptyFileSetTouchesNothing) {
  auto catalog = schema::build_ssb_catalog();
  auto engine = make_engine("sqlite");
  engine->create_schema(catalog, schema::KeyClauses::kPrimaryOnly);
  auto report = load(*engine, catalog, {});
  EXPECT_TRUE(report.tables.empty());
  EXPECT_EQ(engine->count_rows("CUSTOMER"), 0);
}

TEST(Loader, TruncatedRowNamesLine) {
  const auto& ds = shared_dataset();
  TempDir dir("trunc");
  auto src = datagen::table_path(ds.dir.path(), Benchmark::kSsb, "SUPPLIER");
  auto text = ssbkit::testing::slurp(src);
  // Cut the 7th line after its second field.
  std::size_t pos = 0;
  for (int i = 0; i < 6; ++i) pos = text.find('\n', pos) + 1;
  auto bar = text.find('|', text.find('|', pos) + 1);
  auto eol = text.find('\n', pos);
  text.erase(bar + 1, eol - bar - 1);
  auto bad = dir / "supplier.tbl";
  std::ofstream(bad) << text;

  auto catalog = schema::build_ssb_catalog();
  for (const char* id : {"sqlite", "reference"}) {
    auto engine = make_engine(id);
    engine->create_schema(catalog, schema::KeyClauses::kPrimaryOnly);
    try {
      load(*engine, catalog, {{"SUPPLIER", bad}});
      FAIL() << id << ": expected an error";
    } catch (const Error& e) {
      EXPECT_NE(std::string(e.what()).find(":7"), std::string::npos) << id << ": " << e.what();
    }
  }
}

TEST(Loader, MissingFilesAreNamed) {
  TempDir dir("empty");
  auto catalog = schema::build_ssb_catalog();
  try {
    dataset_files(dir.path(), Benchmark::kSsb, catalog);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotFound);
    EXPECT_NE(std::string(e.what()).find("lineorder.tbl"), std::string::npos) << e.what();
  }
}

TEST(Advisor, Q11CoversItsPredicateColumns) {
  auto q = ssb("Q1.1");
  auto advice = advise_indices({q}, schema::build_ssb_catalog());
  std::set<std::string> single;
  for (const auto& a : advice) {
    if (a.columns.size() == 1) single.insert(a.columns[0]);
    EXPECT_EQ(a.origins, std::vector<std::string>{"Q1.1"});
  }
  for (const auto& col : where_columns(q.sql)) EXPECT_TRUE(single.contains(col)) << col;
  for (const char* col : {"LO_DISCOUNT", "LO_QUANTITY", "D_YEAR"}) EXPECT_TRUE(single.contains(col)) << col;
  EXPECT_TRUE(std::any_of(advice.begin(), advice.end(), [](const IndexAdvice& a) {
    return a.name() == "IX_LINEORDER_LO_DISCOUNT_LO_QUANTITY";
  }));
}

TEST(Advisor, EmptyInputAndDeduplication) {
  auto catalog = schema::build_ssb_catalog();
  EXPECT_TRUE(advise_indices({}, catalog).empty());
  auto advice = advise_indices({ssb("Q1.1"), ssb("Q1.2")}, catalog);
  auto it = std::find_if(advice.begin(), advice.end(), [](const IndexAdvice& a) {
    return a.table == "LINEORDER" && a.columns == std::vector<std::string>{"LO_DISCOUNT"};
  });
  ASSERT_NE(it, advice.end());
  EXPECT_EQ(it->origins, (std::vector<std::string>{"Q1.1", "Q1.2"}));
  std::set<std::string> names;
  for (const auto& a : advice) EXPECT_TRUE(names.insert(a.name()).second) << a.name();
}

TEST(Advisor, CoversEveryTemplateAndStaysInCatalog) {
  auto catalog = schema::build_ssb_catalog();
  auto instances = all_defaults();
  auto advice = advise_indices(instances, catalog);
  std::map<std::string, std::set<std::string>> single;
  for (const auto& a : advice) {
    const auto* t = catalog.find_table(a.table);
    ASSERT_NE(t, nullptr) << a.table;
    for (const auto& c : a.columns) EXPECT_NE(t->find_column(c), nullptr) << a.name();
    if (a.columns.size() == 1) single[a.columns[0]].insert(a.origins.begin(), a.origins.end());
  }
  for (const auto& q : instances) {
    for (const auto& col : where_columns(q.sql)) EXPECT_TRUE(single[col].contains(q.label())) << q.label() << " " << col;
  }
  // Pure function of the instance set.
  auto reversed = instances;
  std::reverse(reversed.begin(), reversed.end());
  auto again = advise_indices(reversed, catalog);
  ASSERT_EQ(again.size(), advice.size());
  for (std::size_t i = 0; i < advice.size(); ++i) {
    EXPECT_EQ(again[i].table, advice[i].table);
    EXPECT_EQ(again[i].columns, advice[i].columns);
    std::set<std::string> a(advice[i].origins.begin(), advice[i].origins.end());
    std::set<std::string> b(again[i].origins.begin(), again[i].origins.end());
    EXPECT_EQ(a, b);
  }
}

TEST(Plan, OverlapMinimizingMatchesExhaustiveSearch) {
  std::vector<QueryInstance> three{ssb("Q1.1"), ssb("Q1.2"), ssb("Q2.1")};
  auto plan = build_plan(three, "sqlite", Configuration::kOutOfBox, OrderingPolicy::kOverlapMinimizing, 0);
  auto perm = three;
  std::sort(perm.begin(), perm.end(), [](const auto& a, const auto& b) { return a.label() < b.label(); });
  int best_pairs = -1;
  double best_overlap = 1e9;
  do {
    int p = disjoint_pairs(perm);
    double o = total_overlap(perm);
    if (p > best_pairs || (p == best_pairs && o < best_overlap)) {
      best_pairs = p;
      best_overlap = o;
    }
  } while (std::next_permutation(perm.begin(), perm.end(),
                                 [](const auto& a, const auto& b) { return a.label() < b.label(); }));
  EXPECT_EQ(disjoint_pairs(plan.instances), best_pairs);
  EXPECT_DOUBLE_EQ(total_overlap(plan.instances), best_overlap);
  EXPECT_EQ(plan.instances[1].label(), "Q2.1") << "Q1.x queries placed next to each other";
}

TEST(Plan, OverlapMinimizingReachesMaximumDisjointPairs) {
  std::vector<QueryInstance> five{ssb("Q1.1"), ssb("Q1.2"), ssb("Q2.1"), ssb("Q3.1"), ssb("Q4.1")};
  auto plan = build_plan(five, "sqlite", Configuration::kOutOfBox, OrderingPolicy::kOverlapMinimizing, 0);
  EXPECT_EQ(disjoint_adjacent_pairs(plan.instances), disjoint_pairs(plan.instances));
  auto perm = five;
  auto by_label = [](const auto& a, const auto& b) { return a.label() < b.label(); };
  std::sort(perm.begin(), perm.end(), by_label);
  int best = 0;
  do best = std::max(best, disjoint_pairs(perm));
  while (std::next_permutation(perm.begin(), perm.end(), by_label));
  EXPECT_EQ(disjoint_pairs(plan.instances), best);
}

TEST(Plan, PoliciesAndValidation) {
  auto instances = all_defaults();
  auto seq = build_plan(instances, "sqlite", Configuration::kOutOfBox, OrderingPolicy::kSequential, 0);
  EXPECT_EQ(labels(seq.instances), labels(instances));

  auto s1 = build_plan(instances, "sqlite", Configuration::kOutOfBox, OrderingPolicy::kSeededShuffle, 9);
  auto s2 = build_plan(instances, "sqlite", Configuration::kOutOfBox, OrderingPolicy::kSeededShuffle, 9);
  auto s3 = build_plan(instances, "sqlite", Configuration::kOutOfBox, OrderingPolicy::kSeededShuffle, 10);
  EXPECT_EQ(labels(s1.instances), labels(s2.instances));
  EXPECT_NE(labels(s1.instances), labels(s3.instances));
  auto sorted = labels(s1.instances);
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, labels(instances));
  EXPECT_EQ(s1.hash(), s2.hash());
  EXPECT_NE(s1.hash(), s3.hash());

  for (auto policy : {OrderingPolicy::kSequential, OrderingPolicy::kOverlapMinimizing, OrderingPolicy::kSeededShuffle}) {
    auto single = build_plan({ssb("Q3.2")}, "sqlite", Configuration::kIndexed, policy, 5);
    EXPECT_EQ(labels(single.instances), std::vector<std::string>{"Q3.2"});
    EXPECT_EQ(parse_ordering_policy(to_string(policy)), policy);
  }
  EXPECT_THROW(build_plan(instances, "sqlite", Configuration::kOutOfBox, OrderingPolicy::kSequential, 0, 0), Error);
  EXPECT_THROW(build_plan(instances, "sqlite", Configuration::kOutOfBox, OrderingPolicy::kSequential, 0, 1, -1),
               Error);
  EXPECT_EQ(parse_configuration("out-of-box"), Configuration::kOutOfBox);
  EXPECT_EQ(parse_configuration("indexed"), Configuration::kIndexed);
  EXPECT_THROW(parse_configuration("tuned"), Error);
}

TEST(Execute, RecordsRetainedRepetitionsSequentially) {
  auto engine = loaded("sqlite");
  auto plan = build_plan({ssb("Q1.1"), ssb("Q2.1")}, "sqlite", Configuration::kOutOfBox,
                         OrderingPolicy::kSequential, 0, 3, 1);
  auto result = execute(*engine, plan, {.data_hash = "abc"});
  ASSERT_EQ(result.records.size(), 6u);
  EXPECT_EQ(result.explain.size(), 2u);
  auto q11 = engine->query(ssb("Q1.1").sql);
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto& r = result.records[i];
    EXPECT_FALSE(r.failed) << r.error;
    EXPECT_EQ(r.repetition, static_cast<int>(i % 3));
    EXPECT_EQ(r.query, i < 3 ? "Q1.1" : "Q2.1");
    EXPECT_GE(r.wall_ms, 0.0);
    EXPECT_EQ(r.plan_hash, plan.hash());
    EXPECT_EQ(r.data_hash, "abc");
    EXPECT_EQ(r.engine, "sqlite");
    EXPECT_EQ(r.started_at.size(), 24u) << r.started_at;
    EXPECT_LE(r.start_offset_ms, r.end_offset_ms);
    if (i > 0) {
      EXPECT_GE(r.start_offset_ms, result.records[i - 1].end_offset_ms);
    }
  }
  EXPECT_EQ(result.records[0].row_count, q11.row_count());
  EXPECT_EQ(result.records[0].result_hash, q11.multiset_hash());
}

TEST(Execute, EmptyResultsAndFailures) {
  auto engine = loaded("sqlite");
  QueryInstance broken;
  broken.template_id = "Q9.9";
  broken.sql = "select count(*) from no_such_table";
  auto empty = ssb("Q3.4");
  auto plan = build_plan({broken, empty}, "sqlite", Configuration::kOutOfBox, OrderingPolicy::kSequential, 0, 2, 0);
  auto result = execute(*engine, plan);
  ASSERT_EQ(result.records.size(), 4u);
  EXPECT_TRUE(result.records[0].failed);
  EXPECT_FALSE(result.records[0].error.empty());
  EXPECT_FALSE(result.records[2].failed) << result.records[2].error;
  EXPECT_EQ(result.records[2].row_count, engine->query(empty.sql).row_count());
}

TEST(Execute, RerunYieldsSameRowCounts) {
  auto engine = loaded("sqlite");
  auto plan = build_plan(all_defaults(), "sqlite", Configuration::kOutOfBox, OrderingPolicy::kSequential, 0, 1, 0);
  auto a = execute(*engine, plan, {.capture_explain = false});
  auto b = execute(*engine, plan, {.capture_explain = false});
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].row_count, b.records[i].row_count);
    EXPECT_EQ(a.records[i].result_hash, b.records[i].result_hash);
  }
}

TEST(Execute, EnginesAndConfigurationsAgree) {
  auto sqlite = loaded("sqlite");
  auto reference = loaded("reference");
  auto instances = all_defaults();
  instances.push_back(ssb("Q2.2", 7));
  instances.push_back(ssb("Q4.3", 7));
  std::vector<std::string> before;
  for (const auto& q : instances) {
    auto a = sqlite->query(q.sql);
    auto b = reference->query(q.sql);
    EXPECT_EQ(a.sorted_rows(), b.sorted_rows()) << q.label();
    EXPECT_EQ(a.multiset_hash(), b.multiset_hash()) << q.label();
    before.push_back(a.multiset_hash());
  }
  for (const auto& a : advise_indices(instances, schema::build_ssb_catalog()))
    sqlite->create_index(a.name(), a.table, a.columns);
  for (std::size_t i = 0; i < instances.size(); ++i)
    EXPECT_EQ(sqlite->query(instances[i].sql).multiset_hash(), before[i]) << instances[i].label();
}

TEST(Records, JsonLinesRoundTrip) {
  TempDir dir("records");
  RunRecord r;
  r.plan_hash = "p";
  r.data_hash = "d";
  r.engine = "sqlite";
  r.engine_version = "3";
  r.configuration = Configuration::kIndexed;
  r.benchmark = "ssb";
  r.query = "Q1.1";
  r.repetition = 2;
  r.wall_ms = 1.25;
  r.row_count = 4;
  r.started_at = "2026-01-01T00:00:00.000Z";
  r.start_offset_ms = 3;
  r.end_offset_ms = 4.25;
  r.result_hash = "h";
  RunRecord f = r;
  f.failed = true;
  f.error = "no such table";
  write_records(dir / "r.jsonl", {r, f});
  auto back = read_records(dir / "r.jsonl");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].to_json(), r.to_json());
  EXPECT_EQ(back[1].to_json(), f.to_json());

  std::ofstream(dir / "bad.jsonl") << r.to_json().dump() << "\n{not json\n";
  try {
    read_records(dir / "bad.jsonl");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("bad.jsonl:2"), std::string::npos) << e.what();
  }
}

} // namespace
} // namespace ssbkit::harness

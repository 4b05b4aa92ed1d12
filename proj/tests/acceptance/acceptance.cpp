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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
//
//   ssbkit_acceptance <path-to-ssbkit-cli> [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "../support/fixtures.hpp"
#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/compression/benchmark.hpp"
#include "ssbkit/compression/codec.hpp"
#include "ssbkit/datagen/cardinality.hpp"
#include "ssbkit/datagen/dataset.hpp"
#include "ssbkit/datagen/domains.hpp"
#include "ssbkit/datagen/generator.hpp"
#include "ssbkit/harness/advisor.hpp"
#include "ssbkit/harness/engine.hpp"
#include "ssbkit/harness/loader.hpp"
#include "ssbkit/harness/reference_engine.hpp"
#include "ssbkit/harness/runner.hpp"
#include "ssbkit/schema/catalog.hpp"
#include "ssbkit/workload/mapping.hpp"
#include "ssbkit/workload/template.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ssbkit;
using datagen::Benchmark;
using ssbkit::testing::read_rows;
using ssbkit::testing::shared_dataset;
using ssbkit::testing::slurp;
using ssbkit::testing::TempDir;

std::string g_cli;

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;
  std::vector<std::string> failures;

  void check(bool ok, std::string what) {
    if (!ok) {
      pass = false;
      failures.push_back(std::move(what));
    }
  }
  void note(std::string text) { notes.push_back(std::move(text)); }
};

struct Criterion {
  int number;
  std::string title;
  double budget_s;  // 0 = no runtime bound
  std::function<void(Verdict&)> body;
};

struct Outcome {
  int status = -1;
  std::string output;
};

Outcome cli(const std::string& args) {
  Outcome o;
  FILE* pipe = ::popen((g_cli + " " + args + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return o;
  char buf[4096];
  while (auto n = std::fread(buf, 1, sizeof buf, pipe)) o.output.append(buf, n);
  int raw = ::pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::size_t stored_index(const schema::SchemaCatalog& c, std::string_view table, std::string_view column) {
  auto stored = c.table(table).stored_columns();
  for (std::size_t i = 0; i < stored.size(); ++i)
    if (stored[i]->name == column) return i;
  throw std::runtime_error(fmt::format("{}.{} is not stored", table, column));
}

std::vector<std::vector<std::string>> ssb_rows(const fs::path& dir, std::string_view table) {
  return read_rows(datagen::table_path(dir, Benchmark::kSsb, table));
}

// Columns named inside the WHERE clause, from the rendered text alone.
std::set<std::string> where_columns(const std::string& sql) {
  auto upper = to_upper(sql);
  auto where = upper.find("WHERE");
  if (where == std::string::npos) return {};
  auto end = upper.find("GROUP BY", where);
  auto clause = upper.substr(where, end == std::string::npos ? std::string::npos : end - where);
  std::set<std::string> out;
  std::regex column(R"(\b(LO|C|S|P|D)_[A-Z0-9]+\b)");
  for (std::sregex_iterator it(clause.begin(), clause.end(), column), stop; it != stop; ++it) out.insert(it->str());
  return out;
}

std::vector<workload::QueryInstance> ssb_instances(const datagen::GenSpec& spec, const std::vector<std::optional<std::uint64_t>>& seeds) {
  std::vector<workload::QueryInstance> out;
  for (const auto& seed : seeds)
    for (const auto& t : workload::flight_catalog()) out.push_back(workload::instantiate(t, seed, spec));
  return out;
}

std::unique_ptr<harness::EngineAdapter> loaded_engine(std::string_view id, const testing::Dataset& ds) {
  auto catalog = schema::build_ssb_catalog(ds.spec.ssb);
  auto engine = harness::make_engine(id);
  engine->create_schema(catalog, schema::KeyClauses::kPrimaryOnly);
  harness::load(*engine, catalog, harness::dataset_files(ds.dir.path(), Benchmark::kSsb, catalog));
  return engine;
}

// ---------------------------------------------------------------------------

void schema_fidelity(Verdict& v) {
  auto o = cli("ddl --variant ssb");
  v.check(o.status == 0, "ddl exited with " + std::to_string(o.status));
  std::set<std::string> tables;
  std::regex create(R"(CREATE TABLE\s+([A-Za-z_]+))");
  std::size_t statements = 0;
  for (std::sregex_iterator it(o.output.begin(), o.output.end(), create), stop; it != stop; ++it) {
    tables.insert(to_upper((*it)[1].str()));
    ++statements;
  }
  v.check(statements == 5, fmt::format("{} CREATE TABLE statements", statements));
  std::set<std::string> want{"LINEORDER", "CUSTOMER", "SUPPLIER", "PART", "DIM_DATE"};
  v.check(tables == want, "tables: " + join(std::vector<std::string>(tables.begin(), tables.end()), ","));
  for (const char* absent : {"PARTSUPP", "NATION", "REGION"}) v.check(!tables.contains(absent), std::string(absent) + " present");
  for (const char* col : {"C_CITY", "S_CITY"}) v.check(o.output.find(col) != std::string::npos, std::string(col) + " missing");
  auto catalog = schema::build_ssb_catalog();
  v.check(catalog.fact_table() && catalog.fact_table()->name == "LINEORDER", "fact table is not LINEORDER");
  v.note(fmt::format("{} tables: {}", tables.size(), join(std::vector<std::string>(tables.begin(), tables.end()), ",")));
}

void determinism(Verdict& v) {
  TempDir dir("acc-det");
  auto a = cli("gen --sf 0.01 --seed 42 --out " + (dir / "a").string());
  auto b = cli("gen --sf 0.01 --seed 42 --out " + (dir / "b").string());
  v.check(a.status == 0 && b.status == 0, "gen failed: " + a.output + b.output);
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir / "a")) {
    if (!entry.is_regular_file()) continue;
    auto rel = fs::relative(entry.path(), dir / "a");
    v.check(fs::exists(dir / "b" / rel), rel.string() + " missing in second run");
    v.check(slurp(entry.path()) == slurp(dir / "b" / rel), rel.string() + " differs");
    ++files;
  }
  v.check(files >= 14, fmt::format("only {} files generated", files));
  v.note(fmt::format("{} files byte-identical incl. manifest", files));
}

void cardinality_laws(Verdict& v) {
  const auto& ds = shared_dataset();
  // ceil(base * 1/100) with the canonical bases.
  std::map<std::string, std::int64_t> linear{{"LINEORDER", 6'000'000}, {"CUSTOMER", 30'000}, {"SUPPLIER", 2'000}};
  for (const auto& [table, base] : linear) {
    auto want = (base + 99) / 100;
    auto lines = static_cast<std::int64_t>(ssb_rows(ds.dir.path(), table).size());
    v.check(lines == want, fmt::format("{}: {} rows, want {}", table, lines, want));
  }
  auto plan = datagen::CardinalityPlan::ssb_default();
  std::map<int, std::int64_t> part{{1, 200'000}, {2, 400'000}, {4, 600'000}};
  for (const auto& [s, want] : part) {
    auto got = datagen::cardinality(plan, "PART", ScaleFactor(s, 1));
    v.check(got == want, fmt::format("PART at SF {}: {}, want {}", s, got, want));
  }
  v.note("LINEORDER 60000, CUSTOMER 300, SUPPLIER 20; PART 200000/400000/600000 at SF 1/2/4");
}

void integrity_and_distribution(Verdict& v) {
  const auto& ds = shared_dataset();
  const auto& dir = ds.dir.path();
  auto catalog = schema::build_ssb_catalog(ds.spec.ssb);
  auto lo = ssb_rows(dir, "LINEORDER");
  std::size_t fk_checked = 0;
  for (const auto& fk : catalog.table("LINEORDER").foreign_keys) {
    auto parent = ssb_rows(dir, fk.ref_table);
    std::set<std::string> keys;
    auto pk = stored_index(catalog, fk.ref_table, fk.ref_columns.at(0));
    for (const auto& r : parent) keys.insert(r[pk]);
    auto col = stored_index(catalog, "LINEORDER", fk.columns.at(0));
    std::size_t orphans = 0;
    for (const auto& r : lo) orphans += !keys.contains(r[col]);
    v.check(orphans == 0, fmt::format("{}: {} orphan rows", fk.columns[0], orphans));
    ++fk_checked;
  }

  struct Fd {
    const char* table;
    const char* from;
    const char* to;
  };
  const Fd fds[] = {{"CUSTOMER", "C_CITY", "C_NATION"}, {"CUSTOMER", "C_NATION", "C_REGION"},
                    {"SUPPLIER", "S_CITY", "S_NATION"}, {"SUPPLIER", "S_NATION", "S_REGION"},
                    {"PART", "P_BRAND1", "P_CATEGORY"}, {"PART", "P_CATEGORY", "P_MFGR"},
                    {"DIM_DATE", "D_DATEKEY", "D_YEARMONTHNUM"}, {"DIM_DATE", "D_YEARMONTHNUM", "D_YEAR"}};
  for (const auto& fd : fds) {
    auto rows = ssb_rows(dir, fd.table);
    auto a = stored_index(catalog, fd.table, fd.from);
    auto b = stored_index(catalog, fd.table, fd.to);
    std::map<std::string, std::string> seen;
    std::size_t violations = 0;
    for (const auto& r : rows) violations += seen.emplace(r[a], r[b]).first->second != r[b];
    v.check(violations == 0, fmt::format("{} -> {}: {} violations", fd.from, fd.to, violations));
  }

  auto file = datagen::table_path(dir, Benchmark::kSsb, "LINEORDER");
  std::vector<std::string> ps;
  for (const char* column : {"LO_DISCOUNT", "LO_CUSTKEY", "LO_PARTKEY", "LO_SUPPKEY", "LO_ORDERDATE"}) {
    auto r = datagen::uniformity_report(ds.spec, file, "LINEORDER", column);
    v.check(r.p_value > 0.001, fmt::format("{}: p = {:.3g}", column, r.p_value));
    ps.push_back(fmt::format("{} p={:.3f}", column, r.p_value));
  }
  // Independent recomputation of the discount statistic.
  std::map<std::string, double> counts;
  auto col = stored_index(catalog, "LINEORDER", "LO_DISCOUNT");
  for (const auto& r : lo) counts[r[col]] += 1;
  double expected = static_cast<double>(lo.size()) / 11.0;
  double stat = 0;
  for (const auto& [k, n] : counts) stat += (n - expected) * (n - expected) / expected;
  auto lib = datagen::uniformity_report(ds.spec, file, "LINEORDER", "LO_DISCOUNT");
  v.check(counts.size() == 11 && std::abs(lib.statistic - stat) < 1e-9, "discount statistic disagrees with recount");
  v.note(fmt::format("{} FKs, {} FDs clean; {}", fk_checked, std::size(fds), join(ps, ", ")));
}

void workload_validity(Verdict& v) {
  std::regex lineorder(R"(\blineorder\b)", std::regex::icase);
  std::regex select(R"(\bselect\b)", std::regex::icase);
  for (const auto& t : workload::flight_catalog()) {
    auto violations = workload::validate_template(t);
    v.check(violations.empty(), t.id + ": " + (violations.empty() ? "" : violations[0].code));
    auto sql = workload::instantiate(t).sql;
    auto refs = std::distance(std::sregex_iterator(sql.begin(), sql.end(), lineorder), std::sregex_iterator());
    auto selects = std::distance(std::sregex_iterator(sql.begin(), sql.end(), select), std::sregex_iterator());
    v.check(refs == 1, fmt::format("{} references LINEORDER {} times", t.id, refs));
    v.check(selects == 1, fmt::format("{} has {} SELECTs", t.id, selects));
  }
  v.check(workload::flight_catalog().size() == 13, "template count");
  const std::vector<std::tuple<int, std::string, std::string>> figure{
      {1, "Q6", "Q1.1"}, {2, "Q6", "Q1.2"}, {3, "Q6", "Q1.3"},   {4, "Q3", "Q5.1"},   {5, "Q3", "Q5.2"},
      {6, "Q3", "Q5.3"}, {7, "Q2", "Q12.1"}, {8, "Q2", "Q12.2"}, {9, "Q5", "Q13.1"}, {10, "Q5", "Q13.2"}};
  const auto& m = workload::mapping_table();
  v.check(m.size() == figure.size(), fmt::format("{} mapping rows", m.size()));
  for (std::size_t i = 0; i < std::min(m.size(), figure.size()); ++i) {
    auto [index, tpch, label] = figure[i];
    v.check(m[i].index == index && m[i].tpch_id == tpch && m[i].pair_label == label,
            fmt::format("mapping row {} differs", i + 1));
  }
  v.note("13 templates valid; 10 mapping rows exact");
}

void query_correctness(Verdict& v) {
  const auto& ds = shared_dataset();
  auto sqlite = loaded_engine("sqlite", ds);
  auto reference = loaded_engine("reference", ds);
  auto instances = ssb_instances(ds.spec, {std::nullopt, 1, 2});
  std::vector<std::string> hashes;
  std::int64_t rows = 0;
  for (const auto& q : instances) {
    auto a = sqlite->query(q.sql);
    auto b = reference->query(q.sql);
    v.check(a.sorted_rows() == b.sorted_rows(), fmt::format("{} (seed {}): engine vs reference differ", q.label(),
                                                            q.seed ? std::to_string(*q.seed) : "default"));
    hashes.push_back(a.multiset_hash());
    rows += a.row_count();
  }
  for (const auto& a : harness::advise_indices(instances, schema::build_ssb_catalog(ds.spec.ssb)))
    sqlite->create_index(a.name(), a.table, a.columns);
  for (std::size_t i = 0; i < instances.size(); ++i)
    v.check(sqlite->query(instances[i].sql).multiset_hash() == hashes[i], instances[i].label() + ": indexed result differs");
  v.note(fmt::format("{} instances, {} result rows, identical across engines and configurations", instances.size(), rows));
}

void selectivity_coverage(Verdict& v) {
  TempDir dir("acc-sf01");
  auto spec = datagen::make_spec(ScaleFactor(1, 10), 42);
  spec.output_dir = dir.path();
  datagen::generate_dataset(spec, {.tpch = false});
  harness::ReferenceDatabase db(schema::build_ssb_catalog(spec.ssb));
  for (const auto& t : db.catalog().tables()) db.attach(t.name, datagen::table_path(dir.path(), Benchmark::kSsb, t.name));
  auto facts = static_cast<double>(db.row_count("LINEORDER"));
  double previous = 2.0;
  std::vector<std::string> parts;
  for (const char* id : {"Q1.1", "Q1.2", "Q1.3"}) {
    auto inst = workload::instantiate(workload::find_template(id), std::nullopt, spec);
    double observed = static_cast<double>(db.count_matching_rows(inst.sql)) / facts;
    double rel = observed / inst.estimated_filter_factor - 1.0;
    v.check(observed < previous, fmt::format("{} observed {:.6g} not below previous", id, observed));
    v.check(std::abs(rel) <= 0.15, fmt::format("{}: observed {:.6g} vs estimated {:.6g} ({:+.1f}%)", id, observed,
                                               inst.estimated_filter_factor, rel * 100));
    previous = observed;
    parts.push_back(fmt::format("{} {:.3g}/{:.3g} ({:+.1f}%)", id, observed, inst.estimated_filter_factor, rel * 100));
  }
  v.note("observed/estimated at SF 0.1: " + join(parts, ", "));
}

void index_pipeline(Verdict& v) {
  const auto& ds = shared_dataset();
  auto catalog = schema::build_ssb_catalog(ds.spec.ssb);
  auto instances = ssb_instances(ds.spec, {std::nullopt});
  auto advice = harness::advise_indices(instances, catalog);
  std::map<std::string, std::set<std::string>> covered;
  for (const auto& a : advice) {
    for (const auto& c : a.columns) v.check(catalog.table(a.table).find_column(c) != nullptr, a.name() + " names an unknown column");
    if (a.columns.size() == 1) covered[a.columns[0]].insert(a.origins.begin(), a.origins.end());
  }
  std::size_t pairs = 0;
  for (const auto& q : instances) {
    for (const auto& col : where_columns(q.sql)) {
      v.check(covered[col].contains(q.label()), q.label() + ": " + col + " not advised");
      ++pairs;
    }
  }

  auto engine = loaded_engine("sqlite", ds);
  std::map<harness::Configuration, std::vector<harness::RunRecord>> records;
  for (auto config : {harness::Configuration::kOutOfBox, harness::Configuration::kIndexed}) {
    if (config == harness::Configuration::kIndexed)
      for (const auto& a : advice) engine->create_index(a.name(), a.table, a.columns);
    auto plan = harness::build_plan(instances, "sqlite", config, harness::OrderingPolicy::kSequential, 42, 1, 0);
    records[config] = harness::execute(*engine, plan).records;
  }
  const auto& oob = records[harness::Configuration::kOutOfBox];
  const auto& idx = records[harness::Configuration::kIndexed];
  v.check(oob.size() == instances.size() && idx.size() == instances.size(), "record counts");
  for (std::size_t i = 0; i < std::min(oob.size(), idx.size()); ++i) {
    v.check(!oob[i].failed && !idx[i].failed, oob[i].query + " failed");
    v.check(oob[i].result_hash == idx[i].result_hash, oob[i].query + ": indexed result differs");
    v.check(idx[i].configuration == harness::Configuration::kIndexed, "configuration not recorded");
  }
  v.note(fmt::format("{} advised indices cover {} WHERE column uses; {} records per configuration, identical results",
                     advice.size(), pairs, oob.size()));
}

void compression_properties(Verdict& v) {
  using namespace compression;
  std::mt19937_64 rng(424242);
  std::vector<Codec> codecs{Codec::kRle, Codec::kNullSuppress};
  if (heavy_compressor() != nullptr) codecs.push_back(Codec::kHeavy);
  for (int i = 0; i < 1000; ++i) {
    auto n = std::uniform_int_distribution<int>(0, 500)(rng);
    auto spread = std::int64_t{1} << std::uniform_int_distribution<int>(0, 40)(rng);
    std::vector<std::int64_t> values;
    while (static_cast<int>(values.size()) < n) {
      auto x = std::uniform_int_distribution<std::int64_t>(-spread, spread)(rng);
      auto run = std::uniform_int_distribution<int>(1, 8)(rng);
      for (int k = 0; k < run && static_cast<int>(values.size()) < n; ++k) values.push_back(x);
    }
    ColumnVector c(values);
    for (auto codec : codecs) {
      if (!(decode(deserialize(serialize(encode(c, codec)))) == c)) {
        v.check(false, fmt::format("column {} does not round-trip under {}", i, to_string(codec)));
      }
    }
    std::int64_t oracle = 0;
    for (auto x : decode(rle_encode(c)).values()) oracle += x;
    if (sum_on_compressed(rle_encode(c)) != oracle) v.check(false, fmt::format("column {}: sum differs", i));
  }

  const auto& ds = shared_dataset();
  auto catalog = schema::build_ssb_catalog(ds.spec.ssb);
  auto dates = load_column(datagen::table_path(ds.dir.path(), Benchmark::kSsb, "LINEORDER"), catalog.table("LINEORDER"),
                           "LO_ORDERDATE");
  auto shuffled = dates.values();
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  ColumnVector sorted = dates.sorted();
  ColumnVector unsorted(shuffled);
  double rs = compression_ratio(sorted, rle_encode(sorted));
  double ru = compression_ratio(unsorted, rle_encode(unsorted));
  v.check(rs >= ru, fmt::format("sorted ratio {:.3f} below shuffled {:.3f}", rs, ru));

  std::vector<std::int64_t> four;
  for (int i = 0; i < 1000; ++i) four.push_back(i % 4);
  double h = entropy(ColumnVector(four)).entropy_bits;
  v.check(std::abs(h - 2.0) <= 1e-9, fmt::format("entropy {:.12f}", h));
  v.note(fmt::format("1000 columns x {} codecs lossless; LO_ORDERDATE RLE sorted {:.2f} vs shuffled {:.3f}; H = {:.12f}",
                     codecs.size(), rs, ru, h));
}

void end_to_end(Verdict& v) {
  TempDir dir("acc-e2e");
  auto ws = "--sf 0.01 --seed 42 --out " + dir.path().string();
  for (const auto& step : {"gen " + ws, "ddl --variant ssb -o " + (dir / "ssb.sql").string(),
                           "run --engine sqlite --config both " + ws, "report " + ws}) {
    auto o = cli(step);
    v.check(o.status == 0, step + " -> " + o.output);
    if (o.status != 0) return;
  }
  auto report = dir / "report";
  auto manifest = nlohmann::json::parse(slurp(report / "report_manifest.json"));
  std::string prov = manifest.at("provenance");
  std::regex hex(R"([0-9a-f]{64})");
  v.check(std::regex_match(prov, hex), "provenance hash malformed");
  v.check(!manifest.at("data_hashes").empty(), "no data hashes recorded");

  auto finite = [](const std::string& s) {
    try {
      std::size_t used = 0;
      double d = std::stod(s, &used);
      return used == s.size() && std::isfinite(d);
    } catch (...) {
      return false;
    }
  };
  auto csv = [](const fs::path& file) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(file));
    std::string line;
    while (std::getline(in, line)) rows.push_back(split(line, ','));
    return rows;
  };
  for (const char* config : {"out_of_box", "indexed"}) {
    auto rows = csv(report / fmt::format("paired_{}.csv", config));
    v.check(rows.size() == 11, fmt::format("paired_{}: {} data rows", config, rows.size() - 1));
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& r = rows[i];
      v.check(r.size() == 12, "paired row width");
      if (r.size() != 12) continue;
      v.check(r[0] == std::to_string(i), "pair index order");
      v.check(finite(r[6]) && finite(r[7]) && finite(r[8]), fmt::format("pair {}: non-finite value", r[0]));
      v.check(r[11] == prov, "pair provenance");
    }
  }
  for (const auto& fig : {"fig4_tpch_out_of_box", "fig5_ssb_out_of_box", "fig6_tpch_indexed", "fig7_ssb_indexed"}) {
    auto rows = csv(report / (std::string(fig) + ".csv"));
    v.check(rows.size() == 11, fmt::format("{}: {} data rows", fig, rows.size() - 1));
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& r = rows[i];
      if (r.size() != 12) {
        v.check(false, std::string(fig) + " row width");
        continue;
      }
      v.check(finite(r[3]), fmt::format("{} row {}: mean '{}'", fig, i, r[3]));
      v.check(std::regex_match(r[9], hex) && std::regex_match(r[10], hex), std::string(fig) + ": data/plan hash");
      v.check(r[11] == prov, std::string(fig) + ": provenance");
    }
  }
  v.note("10 pairs per configuration, 4 figure tables, provenance " + prov.substr(0, 12));
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: ssbkit_acceptance <ssbkit-cli> [criteria...]\n";
    return 2;
  }
  g_cli = argv[1];
  std::set<int> only;
  for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const std::vector<Criterion> criteria{
      {1, "schema fidelity", 1.0, schema_fidelity},
      {2, "determinism", 10.0, determinism},
      {3, "cardinality laws", 0.0, cardinality_laws},
      {4, "integrity and distribution", 30.0, integrity_and_distribution},
      {5, "workload validity", 0.0, workload_validity},
      {6, "query correctness oracle", 120.0, query_correctness},
      {7, "selectivity coverage", 0.0, selectivity_coverage},
      {8, "index pipeline", 0.0, index_pipeline},
      {9, "compression properties", 60.0, compression_properties},
      {10, "end-to-end pipeline", 300.0, end_to_end},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.contains(c.number)) continue;
    Verdict v;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) v.check(false, fmt::format("took {:.1f}s, budget {:.0f}s", secs, c.budget_s));
    failed += !v.pass;
    std::string detail = v.pass ? join(v.notes, "; ") : join(v.failures, "; ");
    if (detail.size() > 600) detail = detail.substr(0, 600) + " ...";
    std::cout << fmt::format("{} criterion {:>2} {}: {} [{:.2f}s]", v.pass ? "PASS" : "FAIL", c.number, c.title,
                             detail, secs)
              << std::endl;
  }
  std::cout << fmt::format("{} failed", failed) << std::endl;
  return failed;
}

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

// ssbkit: command-line front end for schema, data, workload, harness,
// compression and report modules.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/hash.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/compression/benchmark.hpp"
#include "ssbkit/datagen/dataset.hpp"
#include "ssbkit/harness/advisor.hpp"
#include "ssbkit/harness/engine.hpp"
#include "ssbkit/harness/loader.hpp"
#include "ssbkit/harness/runner.hpp"
#include "ssbkit/report/report.hpp"
#include "ssbkit/schema/ddl.hpp"
#include "ssbkit/workload/template.hpp"

namespace fs = std::filesystem;
using namespace ssbkit;

namespace {

constexpr const char* kOutEnv = "SSBKIT_OUT";

struct Workspace {
  std::string out;
  std::string sf;
  std::optional<std::uint64_t> seed;

  void add_options(CLI::App* cmd, bool seed_required) {
    cmd->add_option("--out", out,
                    fmt::format("Workspace directory (default: ${}/sf<sf>_seed<seed>, ${} defaulting to ./ssbkit-out)",
                                kOutEnv, kOutEnv));
    cmd->add_option("--sf", sf, "Scale factor: integer, decimal or fraction (e.g. 1, 0.01, 1/3)");
    auto* s = cmd->add_option("--seed", seed, "Seed of every random draw (64-bit unsigned)");
    if (seed_required) s->required();
  }

  fs::path dir() const {
    if (!out.empty()) return out;
    if (sf.empty() || !seed) {
      fail(ErrorKind::kInvalidArgument, "give --out, or --sf and --seed to locate the workspace");
    }
    const char* base = std::getenv(kOutEnv);
    return fs::path(base && *base ? base : "ssbkit-out") /
           fmt::format("sf{}_seed{}", ScaleFactor::parse(sf).to_string(), *seed);
  }
};

schema::KeyClauses parse_keys(const std::string& text) {
  if (text == "none") return schema::KeyClauses::kNone;
  if (text == "primary") return schema::KeyClauses::kPrimaryOnly;
  if (text == "foreign") return schema::KeyClauses::kPrimaryAndForeign;
  fail(ErrorKind::kInvalidArgument, fmt::format("unknown key mode '{}'", text));
}

void write_text(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::trunc);
  if (!out || !(out << text)) fail(ErrorKind::kIo, fmt::format("cannot write {}", file.string()));
}

nlohmann::json read_json(const fs::path& file) {
  std::ifstream in(file);
  if (!in) fail(ErrorKind::kNotFound, fmt::format("missing {}", file.string()));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, fmt::format("{}: {}", file.string(), e.what()));
  }
}

// Rebuilds the data spec recorded in a dataset manifest.
datagen::GenSpec spec_from_manifest(const nlohmann::json& manifest) {
  const auto& s = manifest.at("spec");
  auto spec = datagen::make_spec(ScaleFactor::parse(s.at("scale_factor").get<std::string>()),
                                 s.at("seed").get<std::uint64_t>());
  spec.ssb.date_table_name = s.value("date_table", spec.ssb.date_table_name);
  spec.ssb.materialize_profit = s.value("materialize_profit", false);
  return spec;
}

std::vector<datagen::Benchmark> benchmarks_of(const std::string& which) {
  if (which == "ssb") return {datagen::Benchmark::kSsb};
  if (which == "tpch") return {datagen::Benchmark::kTpch};
  return {datagen::Benchmark::kSsb, datagen::Benchmark::kTpch};
}

// ---------------------------------------------------------------- ddl

struct DdlArgs {
  std::string variant = "ssb";
  std::string dialect = "neutral";
  std::string keys = "primary";
  std::string date_table = "DIM_DATE";
  bool materialize_profit = false;
  bool json = false;
  std::string output;
};

void run_ddl(const DdlArgs& a) {
  schema::SsbOptions options;
  options.date_table_name = a.date_table;
  options.materialize_profit = a.materialize_profit;
  auto catalog = a.variant == "ssb" ? schema::build_ssb_catalog(options) : schema::build_tpch_reference_catalog();
  auto text = a.json ? schema::to_json(catalog).dump(2) + "\n"
                     : schema::emit_ddl(catalog, schema::dialect_options(a.dialect, parse_keys(a.keys)));
  if (a.output.empty()) {
    std::cout << text;
  } else {
    write_text(a.output, text);
  }
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  Workspace ws;
  std::vector<std::string> tables;
  std::string benchmark = "both";
  std::string date_table = "DIM_DATE";
  bool materialize_profit = false;
  unsigned threads = 1;
};

void run_gen(const GenArgs& a) {
  auto spec = datagen::make_spec(ScaleFactor::parse(a.ws.sf), *a.ws.seed);
  spec.ssb.date_table_name = a.date_table;
  spec.ssb.materialize_profit = a.materialize_profit;
  spec.output_dir = a.ws.dir();
  datagen::GenerateOptions options;
  options.ssb = a.benchmark != "tpch";
  options.tpch = a.benchmark != "ssb";
  options.tables = a.tables;
  options.threads = std::max(1u, a.threads);
  auto manifest = datagen::generate_dataset(spec, options);
  fmt::print("dataset {} (spec {})\n", spec.output_dir.string(), manifest.hash());
  for (const auto* group : {&manifest.ssb, &manifest.tpch}) {
    for (const auto& t : *group) fmt::print("  {:<28} {:>10} rows  {}\n", t.file, t.rows, t.sha256.substr(0, 16));
  }
}

// ---------------------------------------------------------------- queries

struct QueriesArgs {
  int flight = 0;
  std::optional<std::uint64_t> seed;
  std::string emit;
  std::string sf = "1";
  bool tpch = false;
  bool validate = false;
  bool coverage = false;
};

void run_queries(const QueriesArgs& a) {
  if (a.flight < 0 || a.flight > 4) fail(ErrorKind::kInvalidArgument, "--flight must be 1..4 (0 = all)");
  auto spec = datagen::make_spec(ScaleFactor::parse(a.sf), a.seed.value_or(42));
  if (a.coverage) {
    std::cout << workload::coverage_report(workload::flight_catalog(), spec).to_json().dump(2) << "\n";
    return;
  }
  std::vector<workload::QueryInstance> instances;
  int invalid = 0;
  auto catalog = schema::build_ssb_catalog(spec.ssb);
  for (const auto& t : workload::flight_catalog()) {
    if (a.flight != 0 && t.flight != a.flight) continue;
    if (a.validate) {
      auto violations = workload::validate_template(t, catalog);
      for (const auto& v : violations) fmt::print(std::cerr, "{}: {}: {}\n", t.id, v.code, v.detail);
      invalid += !violations.empty();
    }
    instances.push_back(workload::instantiate(t, a.seed, spec));
  }
  if (a.tpch) {
    for (const auto& t : workload::tpch_reference_queries()) instances.push_back(workload::instantiate(t, a.seed, spec));
  }
  if (a.emit.empty()) {
    for (const auto& q : instances) {
      fmt::print("-- {} (estimated filter factor {:.6g})\n{}\n\n", q.label(), q.estimated_filter_factor, q.sql);
    }
  } else {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& q : instances) {
      write_text(fs::path(a.emit) / (q.label() + ".sql"), q.sql + "\n");
      all.push_back(q.to_json());
    }
    write_text(fs::path(a.emit) / "instances.json", all.dump(2) + "\n");
    fmt::print("wrote {} queries to {}\n", instances.size(), a.emit);
  }
  if (invalid) fail(ErrorKind::kSchema, fmt::format("{} template(s) failed validation", invalid));
}

// ---------------------------------------------------------------- run

struct RunArgs {
  Workspace ws;
  std::string engine = "sqlite";
  std::string config = "both";
  int reps = harness::kDefaultRepetitions;
  int discard = harness::kDefaultDiscardedColdRuns;
  std::string order = "sequential";
  std::string params = "seeded";
  std::string benchmark = "both";
  std::string db = ":memory:";
  bool flush = false;
};

void run_run(const RunArgs& a) {
  auto dir = a.ws.dir();
  std::vector<harness::Configuration> configs;
  if (a.config == "both") {
    configs = {harness::Configuration::kOutOfBox, harness::Configuration::kIndexed};
  } else {
    configs = {harness::parse_configuration(a.config)};
  }
  auto policy = harness::parse_ordering_policy(a.order);
  auto benchmarks = benchmarks_of(a.benchmark);

  // Fail before any work when a data file is missing.
  std::map<datagen::Benchmark, std::map<std::string, fs::path>> files;
  std::map<datagen::Benchmark, schema::SchemaCatalog> catalogs;
  auto manifest_file = dir / datagen::kManifestFile;
  std::vector<std::string> missing;
  std::optional<datagen::GenSpec> spec;
  if (fs::is_regular_file(manifest_file)) spec = spec_from_manifest(read_json(manifest_file));
  for (auto b : benchmarks) {
    auto cat = b == datagen::Benchmark::kSsb ? schema::build_ssb_catalog(spec ? spec->ssb : schema::SsbOptions{})
                                             : schema::build_tpch_reference_catalog();
    try {
      files[b] = harness::dataset_files(dir, b, cat);
    } catch (const Error& e) {
      missing.push_back(e.what());
    }
    catalogs.emplace(b, std::move(cat));
  }
  if (!spec) missing.push_back(fmt::format("missing {}", manifest_file.string()));
  if (!missing.empty()) fail(ErrorKind::kNotFound, join(missing, "; ") + " (run `ssbkit gen` first)");
  if (a.ws.seed && spec->seed != *a.ws.seed) {
    fail(ErrorKind::kInvalidArgument,
         fmt::format("--seed {} does not match the dataset seed {} in {}", *a.ws.seed, spec->seed, dir.string()));
  }
  auto query_seed = a.ws.seed.value_or(spec->seed);
  std::optional<std::uint64_t> param_seed;
  if (a.params == "seeded") {
    param_seed = query_seed;
  } else if (a.params != "defaults") {
    fail(ErrorKind::kInvalidArgument, "--params must be seeded or defaults");
  }
  auto data_hash = sha256_file(manifest_file);

  std::map<harness::Configuration, std::vector<harness::RunRecord>> records;
  std::map<harness::Configuration, nlohmann::json> manifests;
  for (auto c : configs) {
    manifests[c] = {{"format", "ssbkit-run/1"},
                    {"engine", a.engine},
                    {"configuration", harness::to_string(c)},
                    {"data_manifest", manifest_file.filename().string()},
                    {"data_hash", data_hash},
                    {"params", a.params},
                    {"benchmarks", nlohmann::json::array()}};
  }

  for (auto b : benchmarks) {
    const auto& cat = catalogs.at(b);
    const auto& templates =
        b == datagen::Benchmark::kSsb ? workload::flight_catalog() : workload::tpch_reference_queries();
    std::vector<workload::QueryInstance> instances;
    for (const auto& t : templates) instances.push_back(workload::instantiate(t, param_seed, *spec));

    // A fresh engine per benchmark: SSB and TPC-H share table names.
    harness::ConnectionParams conn;
    conn.path = a.db;
    if (a.db != ":memory:") {
      conn.path = a.db + (b == datagen::Benchmark::kSsb ? ".ssb" : ".tpch");
      fs::remove(conn.path);
    }
    auto engine = harness::make_engine(a.engine, conn);
    engine->create_schema(cat, schema::KeyClauses::kPrimaryOnly);
    auto load = harness::load(*engine, cat, files.at(b));
    const char* bname = b == datagen::Benchmark::kSsb ? "ssb" : "tpch";
    fmt::print("{} loaded into {} in {:.1f} ms\n", bname, engine->version(), load.total_ms);

    std::vector<harness::IndexAdvice> advice;
    bool indexed = false;
    std::map<std::string, std::string> first_hashes;
    for (auto c : configs) {
      nlohmann::json index_json = nlohmann::json::array();
      if (c == harness::Configuration::kIndexed && !indexed) {
        advice = harness::advise_indices(instances, cat);
        for (const auto& ix : advice) {
          engine->create_index(ix.name(), ix.table, ix.columns);
          index_json.push_back(ix.to_json());
        }
        indexed = true;
        fmt::print("{}: created {} advised indices\n", bname, advice.size());
      }
      auto plan = harness::build_plan(instances, a.engine, c, policy, query_seed, a.reps, a.discard);
      harness::ExecuteOptions opts;
      opts.data_hash = data_hash;
      opts.flush_caches = a.flush;
      auto result = harness::execute(*engine, plan, opts);

      int failed = 0;
      int mismatched = 0;
      for (const auto& r : result.records) {
        failed += r.failed;
        if (r.failed) continue;
        auto [it, fresh] = first_hashes.emplace(r.query, r.result_hash);
        if (!fresh && it->second != r.result_hash) ++mismatched;
      }
      auto& recs = records[c];
      recs.insert(recs.end(), result.records.begin(), result.records.end());
      manifests[c]["engine_version"] = engine->version();
      manifests[c]["benchmarks"].push_back({{"benchmark", bname},
                                            {"plan", plan.to_json()},
                                            {"plan_hash", plan.hash()},
                                            {"load", load.to_json()},
                                            {"indices", index_json},
                                            {"explain", result.explain},
                                            {"failed_records", failed},
                                            {"result_mismatches", mismatched}});
      fmt::print("{} {}: {} records, {} failed, plan {}\n", bname, harness::to_string(c), result.records.size(),
                 failed, plan.hash().substr(0, 16));
      if (mismatched) {
        fmt::print(std::cerr, "warning: {} {} results differ across runs or configurations\n", mismatched, bname);
      }
    }
  }

  for (auto c : configs) {
    auto stem = fmt::format("{}_{}", a.engine, harness::to_string(c));
    harness::write_records(dir / "runs" / (stem + ".jsonl"), records[c]);
    write_text(dir / "runs" / (stem + ".manifest.json"), manifests[c].dump(2) + "\n");
    fmt::print("wrote {}\n", (dir / "runs" / (stem + ".jsonl")).string());
  }
}

// ---------------------------------------------------------------- compress

struct CompressArgs {
  Workspace ws;
  std::vector<std::string> columns;
  std::vector<std::string> sort_keys;
  int timing_runs = 3;
  bool emit_columns = false;
};

void run_compress(const CompressArgs& a) {
  auto dir = a.ws.dir();
  compression::CompressionOptions options;
  if (!a.columns.empty()) options.columns = a.columns;
  options.sort_keys = a.sort_keys;
  options.timing_runs = a.timing_runs;
  if (a.ws.seed) options.seed = *a.ws.seed;
  auto rows = compression::compression_benchmark(dir, options);
  auto out_dir = dir / "compress";
  fs::create_directories(out_dir);
  {
    std::ofstream csv(out_dir / "compression.csv", std::ios::trunc);
    compression::write_csv(csv, rows);
    if (!csv) fail(ErrorKind::kIo, "cannot write compression.csv");
  }
  compression::write_csv(std::cout, rows);
  if (a.emit_columns) {
    auto catalog = schema::build_ssb_catalog();
    const auto& fact = *catalog.fact_table();
    auto file = datagen::table_path(dir, datagen::Benchmark::kSsb, fact.name);
    for (const auto& name : options.columns) {
      auto column = compression::load_column(file, fact, name).sorted();
      for (auto codec : {compression::Codec::kRle, compression::Codec::kNullSuppress}) {
        auto bytes = compression::serialize(compression::encode(column, codec));
        auto path = out_dir / fmt::format("{}.sorted.{}.ssbc", to_upper(name), compression::to_string(codec));
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) fail(ErrorKind::kIo, fmt::format("cannot write {}", path.string()));
      }
    }
  }
  fmt::print(std::cerr, "wrote {}\n", (out_dir / "compression.csv").string());
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  Workspace ws;
  std::string runs;
  std::string report_dir;
};

void run_report(const ReportArgs& a) {
  auto dir = a.runs.empty() || a.report_dir.empty() ? a.ws.dir() : fs::path();
  fs::path runs = a.runs.empty() ? dir / "runs" : fs::path(a.runs);
  fs::path out = a.report_dir.empty() ? dir / "report" : fs::path(a.report_dir);
  auto files = report::write_report(runs, out);
  for (const auto& f : files.written) {
    if (f.filename().string().rfind("paired_", 0) != 0) continue;
    std::ifstream in(f);
    fmt::print("{}\n{}\n", f.filename().string(), std::string(std::istreambuf_iterator<char>(in), {}));
  }
  fmt::print("provenance {}\n", files.provenance_hash);
  for (const auto& f : files.written) fmt::print("wrote {}\n", f.string());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"ssbkit: Star Schema Benchmark toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ssbkit 0.1.0");

  DdlArgs ddl;
  auto* c_ddl = app.add_subcommand("ddl", "Print CREATE TABLE statements or the catalog as JSON");
  c_ddl->add_option("--variant", ddl.variant, "Schema variant")->check(CLI::IsMember({"ssb", "tpch"}))
      ->capture_default_str();
  c_ddl->add_option("--dialect", ddl.dialect, "Type dialect")
      ->check(CLI::IsMember({"neutral", "sqlite", "mysql", "postgresql"}))
      ->capture_default_str();
  c_ddl->add_option("--keys", ddl.keys, "Key clauses: none, primary or foreign")
      ->check(CLI::IsMember({"none", "primary", "foreign"}))
      ->capture_default_str();
  c_ddl->add_option("--date-table", ddl.date_table, "Physical name of the SSB date dimension")->capture_default_str();
  c_ddl->add_flag("--materialize-profit", ddl.materialize_profit, "Store LO_PROFIT instead of generating it");
  c_ddl->add_flag("--json", ddl.json, "Export the catalog as JSON instead of DDL");
  c_ddl->add_option("-o,--output", ddl.output, "Write to this file instead of stdout");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate .tbl files and a dataset manifest");
  gen.ws.add_options(c_gen, true);
  c_gen->get_option("--sf")->required();
  c_gen->add_option("--tables", gen.tables, "Only these tables (comma separated)")->delimiter(',');
  c_gen->add_option("--benchmark", gen.benchmark, "Which datasets: ssb, tpch or both")
      ->check(CLI::IsMember({"ssb", "tpch", "both"}))
      ->capture_default_str();
  c_gen->add_option("--date-table", gen.date_table, "Physical name of the SSB date dimension")->capture_default_str();
  c_gen->add_flag("--materialize-profit", gen.materialize_profit, "Write LO_PROFIT into lineorder.tbl");
  c_gen->add_option("--threads", gen.threads, "Tables generated concurrently")->capture_default_str();

  QueriesArgs queries;
  auto* c_q = app.add_subcommand("queries", "Instantiate the SSB query flights");
  c_q->add_option("--flight", queries.flight, "Flight 1..4 (0 = all)")->capture_default_str();
  c_q->add_option("--seed", queries.seed, "Parameter seed (omit for the template defaults)");
  c_q->add_option("--emit", queries.emit, "Write <label>.sql files and instances.json here");
  c_q->add_option("--sf", queries.sf, "Scale factor used for filter-factor estimates")->capture_default_str();
  c_q->add_flag("--tpch", queries.tpch, "Also instantiate the paired TPC-H queries");
  c_q->add_flag("--validate", queries.validate, "Check every template against the workload rules");
  c_q->add_flag("--coverage", queries.coverage, "Print functional and selectivity coverage as JSON");

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "Load a dataset into an engine and time the workload");
  run.ws.add_options(c_run, false);
  c_run->add_option("--engine", run.engine, "Engine: " + join(harness::engine_ids(), ", "))->capture_default_str();
  c_run->add_option("--config", run.config, "out_of_box, indexed or both")
      ->check(CLI::IsMember({"out_of_box", "indexed", "both"}))
      ->capture_default_str();
  c_run->add_option("--reps", run.reps, "Timed repetitions per query")->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_run->add_option("--discard", run.discard, "Cold runs executed and discarded before the timed ones")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_run->add_option("--order", run.order, "sequential, overlap_minimizing or seeded_shuffle")->capture_default_str();
  c_run->add_option("--params", run.params, "seeded (draw from --seed) or defaults")
      ->check(CLI::IsMember({"seeded", "defaults"}))
      ->capture_default_str();
  c_run->add_option("--benchmark", run.benchmark, "ssb, tpch or both")
      ->check(CLI::IsMember({"ssb", "tpch", "both"}))
      ->capture_default_str();
  c_run->add_option("--db", run.db, "SQLite database path prefix (default in memory)")->capture_default_str();
  c_run->add_flag("--flush-caches", run.flush, "Ask the engine to drop caches before every execution");

  CompressArgs compress;
  auto* c_comp = app.add_subcommand("compress", "Measure RLE, null suppression and heavy codecs on LINEORDER");
  compress.ws.add_options(c_comp, false);
  c_comp->add_option("--columns", compress.columns, "Numeric LINEORDER columns (comma separated)")->delimiter(',');
  c_comp->add_option("--sort-keys", compress.sort_keys, "Row order of the sorted variant (default: each column)")
      ->delimiter(',');
  c_comp->add_option("--timing-runs", compress.timing_runs, "Timings keep the fastest of this many runs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_comp->add_flag("--emit-columns", compress.emit_columns, "Write sorted encoded columns as .ssbc files");

  ReportArgs rep;
  auto* c_rep = app.add_subcommand("report", "Aggregate run records into paired tables and figure data");
  rep.ws.add_options(c_rep, false);
  c_rep->add_option("--runs", rep.runs, "Directory of *.jsonl run records (default <workspace>/runs)");
  c_rep->add_option("--report-dir", rep.report_dir, "Output directory (default <workspace>/report)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    fmt::print(std::cerr, "error: usage: {} (see --help)\n", msg);
    return 2;
  }

  try {
    if (c_ddl->parsed()) run_ddl(ddl);
    if (c_gen->parsed()) run_gen(gen);
    if (c_q->parsed()) run_queries(queries);
    if (c_run->parsed()) run_run(run);
    if (c_comp->parsed()) run_compress(compress);
    if (c_rep->parsed()) run_report(rep);
  } catch (const Error& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    fmt::print(std::cerr, "error: {}: {}\n", to_string(e.kind()), msg);
    return 1;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: internal: {}\n", e.what());
    return 1;
  }
  return 0;
}

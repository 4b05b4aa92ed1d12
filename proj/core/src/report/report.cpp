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

#include "ssbkit/report/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/hash.hpp"
#include "ssbkit/common/strings.hpp"

namespace ssbkit::report {

namespace {

std::string joined(const std::set<std::string>& parts) {
  return join(std::vector<std::string>(parts.begin(), parts.end()), ";");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string ms(double v) { return fmt::format("{:.4f}", v); }

std::string tpch_label(const std::string& id) { return "TPCH-" + id; }

const AggregateRow* find_row(const std::vector<AggregateRow>& rows, const std::string& query,
                             const std::string& engine, const std::string& configuration) {
  for (const auto& r : rows) {
    if (r.query == query && r.engine == engine && r.configuration == configuration) return &r;
  }
  return nullptr;
}

std::string shared_note(const std::vector<workload::MappingRow>& mapping, const std::string& tpch_id) {
  std::vector<std::string> users;
  for (const auto& m : mapping) {
    if (m.tpch_id == tpch_id) users.push_back(std::to_string(m.index));
  }
  if (users.size() < 2) return "";
  return fmt::format("same TPC-H {} instance for pairs {}", tpch_id, join(users, "/"));
}

} // namespace

nlohmann::json AggregateRow::to_json() const {
  return {{"query", query},         {"benchmark", benchmark}, {"engine", engine},     {"configuration", configuration},
          {"mean_ms", mean_ms},     {"median_ms", median_ms}, {"min_ms", min_ms},     {"max_ms", max_ms},
          {"count", count},         {"failed", failed},       {"data_hash", data_hash}, {"plan_hash", plan_hash}};
}

std::vector<AggregateRow> aggregate(const std::vector<harness::RunRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  struct Group {
    std::vector<double> times;
    int failed = 0;
    std::set<std::string> data, plan;
  };
  std::map<Key, Group> groups;
  for (const auto& r : records) {
    auto& g = groups[{r.engine, std::string(harness::to_string(r.configuration)), r.benchmark, r.query}];
    if (r.failed) {
      ++g.failed;
    } else {
      g.times.push_back(r.wall_ms);
    }
    g.data.insert(r.data_hash);
    g.plan.insert(r.plan_hash);
  }
  std::vector<AggregateRow> out;
  for (auto& [key, g] : groups) {
    AggregateRow row;
    std::tie(row.engine, row.configuration, row.benchmark, row.query) = key;
    row.failed = g.failed;
    row.count = static_cast<int>(g.times.size());
    row.data_hash = joined(g.data);
    row.plan_hash = joined(g.plan);
    if (!g.times.empty()) {
      // Summing in sorted order keeps the mean independent of record order.
      std::sort(g.times.begin(), g.times.end());
      double sum = 0.0;
      for (double t : g.times) sum += t;
      auto n = g.times.size();
      row.mean_ms = sum / static_cast<double>(n);
      row.median_ms = n % 2 ? g.times[n / 2] : (g.times[n / 2 - 1] + g.times[n / 2]) / 2.0;
      row.min_ms = g.times.front();
      row.max_ms = g.times.back();
      row.mean_ms = std::clamp(row.mean_ms, row.min_ms, row.max_ms);
    }
    out.push_back(std::move(row));
  }
  return out;
}

nlohmann::json PairedComparison::to_json() const {
  nlohmann::json j = {{"index", index},           {"pair_label", pair_label}, {"tpch_query", tpch_query},
                      {"ssb_query", ssb_query},   {"engine", engine},           {"configuration", configuration},
                      {"gap", gap}};
  j["tpch"] = tpch ? tpch->to_json() : nlohmann::json(nullptr);
  j["ssb"] = ssb ? ssb->to_json() : nlohmann::json(nullptr);
  j["ratio"] = ratio ? nlohmann::json(*ratio) : nlohmann::json(nullptr);
  return j;
}

std::vector<PairedComparison> paired_report(const std::vector<AggregateRow>& tpch_rows,
                                            const std::vector<AggregateRow>& ssb_rows,
                                            const std::vector<workload::MappingRow>& mapping,
                                            const std::string& engine, const std::string& configuration) {
  std::vector<PairedComparison> out;
  for (const auto& m : mapping) {
    PairedComparison p;
    p.index = m.index;
    p.pair_label = m.pair_label;
    p.tpch_query = tpch_label(m.tpch_id);
    p.ssb_query = m.ssb_label;
    p.engine = engine;
    p.configuration = configuration;
    std::vector<std::string> gaps;
    if (const auto* t = find_row(tpch_rows, p.tpch_query, engine, configuration); t && t->count > 0) {
      p.tpch = *t;
    } else {
      gaps.push_back(fmt::format("no successful {} runs", p.tpch_query));
    }
    if (const auto* s = find_row(ssb_rows, p.ssb_query, engine, configuration); s && s->count > 0) {
      p.ssb = *s;
    } else {
      gaps.push_back(fmt::format("no successful {} runs", p.ssb_query));
    }
    if (p.tpch && p.ssb && p.ssb->mean_ms > 0.0) p.ratio = p.tpch->mean_ms / p.ssb->mean_ms;
    if (p.tpch && p.ssb && !p.ratio) gaps.push_back("SSB mean is zero");
    p.gap = join(gaps, "; ");
    out.push_back(std::move(p));
  }
  return out;
}

const std::vector<FigureSpec>& figure_specs() {
  static const std::vector<FigureSpec> specs = {
      {"fig4_tpch_out_of_box", "TPC-H average execution time (out-of-box)", "tpch", "out_of_box"},
      {"fig5_ssb_out_of_box", "SSB average execution time (out-of-box)", "ssb", "out_of_box"},
      {"fig6_tpch_indexed", "TPC-H average execution time (indexed)", "tpch", "indexed"},
      {"fig7_ssb_indexed", "SSB average execution time (indexed)", "ssb", "indexed"},
  };
  return specs;
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "engine,configuration,benchmark,query,mean_ms,median_ms,min_ms,max_ms,count,failed,data_hash,plan_hash\n";
  for (const auto& r : rows) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_field(r.engine), r.configuration, r.benchmark,
               csv_field(r.query), ms(r.mean_ms), ms(r.median_ms), ms(r.min_ms), ms(r.max_ms), r.count, r.failed,
               r.data_hash, r.plan_hash);
  }
}

void write_paired_csv(std::ostream& out, const std::vector<PairedComparison>& rows, const std::string& provenance) {
  out << "index,pair_label,tpch_query,ssb_query,engine,configuration,tpch_mean_ms,ssb_mean_ms,ratio,gap,note,"
         "provenance\n";
  const auto& mapping = workload::mapping_table();
  for (const auto& p : rows) {
    auto tpch_id = p.tpch_query.substr(p.tpch_query.find('-') + 1);
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{}\n", p.index, p.pair_label, p.tpch_query, p.ssb_query,
               csv_field(p.engine), p.configuration, p.tpch ? ms(p.tpch->mean_ms) : "",
               p.ssb ? ms(p.ssb->mean_ms) : "", p.ratio ? fmt::format("{:.6f}", *p.ratio) : "", csv_field(p.gap),
               csv_field(shared_note(mapping, tpch_id)), provenance);
  }
}

ReportFiles write_report(const std::filesystem::path& runs_dir, const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> inputs;
  if (std::filesystem::is_directory(runs_dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(runs_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".jsonl") inputs.push_back(entry.path());
    }
  }
  if (inputs.empty()) {
    fail(ErrorKind::kNotFound, fmt::format("no run records (*.jsonl) under {}", runs_dir.string()));
  }
  std::sort(inputs.begin(), inputs.end());

  std::vector<harness::RunRecord> records;
  nlohmann::json input_json = nlohmann::json::array();
  std::string provenance_material;
  for (const auto& file : inputs) {
    auto rs = harness::read_records(file);
    auto digest = sha256_file(file);
    provenance_material += file.filename().string() + ":" + digest + "\n";
    input_json.push_back({{"file", file.filename().string()}, {"sha256", digest}, {"records", rs.size()}});
    records.insert(records.end(), rs.begin(), rs.end());
  }
  ReportFiles result;
  result.provenance_hash = sha256_hex(provenance_material);
  const auto& prov = result.provenance_hash;

  auto rows = aggregate(records);
  std::vector<AggregateRow> tpch_rows, ssb_rows;
  std::set<std::string> engines, configurations, data_hashes, plan_hashes;
  for (const auto& r : rows) {
    (r.benchmark == "tpch" ? tpch_rows : ssb_rows).push_back(r);
    engines.insert(r.engine);
    configurations.insert(r.configuration);
  }
  for (const auto& r : records) {
    data_hashes.insert(r.data_hash);
    plan_hashes.insert(r.plan_hash);
  }

  std::filesystem::create_directories(out_dir);
  auto open = [&](const std::string& name) {
    auto path = out_dir / name;
    std::ofstream out(path, std::ios::trunc);
    if (!out) fail(ErrorKind::kIo, fmt::format("cannot write {}", path.string()));
    result.written.push_back(path);
    return out;
  };

  {
    auto out = open("aggregate.csv");
    write_aggregate_csv(out, rows);
  }

  const auto& mapping = workload::mapping_table();
  nlohmann::json paired_json = nlohmann::json::object();
  for (const auto& config : configurations) {
    std::vector<PairedComparison> pairs;
    for (const auto& engine : engines) {
      auto p = paired_report(tpch_rows, ssb_rows, mapping, engine, config);
      pairs.insert(pairs.end(), p.begin(), p.end());
    }
    auto out = open(fmt::format("paired_{}.csv", config));
    write_paired_csv(out, pairs, prov);
    auto& arr = paired_json[config] = nlohmann::json::array();
    for (const auto& p : pairs) arr.push_back(p.to_json());
  }

  nlohmann::json figures = nlohmann::json::array();
  for (const auto& fig : figure_specs()) {
    auto out = open(fig.file_stem + ".csv");
    out << "index,query,engine,mean_ms,median_ms,min_ms,max_ms,count,failed,data_hash,plan_hash,provenance\n";
    nlohmann::json x_labels = nlohmann::json::array();
    for (const auto& m : mapping) x_labels.push_back(fig.benchmark == "tpch" ? tpch_label(m.tpch_id) : m.ssb_label);
    nlohmann::json series = nlohmann::json::array();
    for (const auto& engine : engines) {
      nlohmann::json means = nlohmann::json::array();
      bool any = false;
      for (std::size_t i = 0; i < mapping.size(); ++i) {
        auto query = x_labels[i].get<std::string>();
        const auto* r = find_row(fig.benchmark == "tpch" ? tpch_rows : ssb_rows, query, engine, fig.configuration);
        if (r && r->count > 0) {
          any = true;
          means.push_back(r->mean_ms);
          fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{}\n", mapping[i].index, query, csv_field(engine),
                     ms(r->mean_ms), ms(r->median_ms), ms(r->min_ms), ms(r->max_ms), r->count, r->failed,
                     r->data_hash, r->plan_hash, prov);
        } else {
          means.push_back(nullptr);
          fmt::print(out, "{},{},{},,,,,0,{},,,{}\n", mapping[i].index, query, csv_field(engine), r ? r->failed : 0,
                     prov);
        }
      }
      if (any) series.push_back({{"engine", engine}, {"mean_ms", means}});
    }
    figures.push_back({{"id", fig.file_stem},
                       {"title", fig.title},
                       {"benchmark", fig.benchmark},
                       {"configuration", fig.configuration},
                       {"x", "experiment index"},
                       {"y", "mean execution time (ms)"},
                       {"x_labels", x_labels},
                       {"series", series}});
  }

  {
    auto out = open("plot_data.json");
    out << nlohmann::json{{"provenance", prov}, {"figures", figures}, {"paired", paired_json}}.dump(2) << '\n';
  }
  {
    std::vector<std::string> outputs;
    for (const auto& p : result.written) outputs.push_back(p.filename().string());
    auto out = open("report_manifest.json");
    out << nlohmann::json{{"format", "ssbkit-report/1"},
                          {"provenance", prov},
                          {"inputs", input_json},
                          {"data_hashes", data_hashes},
                          {"plan_hashes", plan_hashes},
                          {"outputs", outputs}}
               .dump(2)
        << '\n';
  }
  return result;
}

} // namespace ssbkit::report

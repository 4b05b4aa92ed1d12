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
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssbkit/harness/runner.hpp"
#include "ssbkit/workload/mapping.hpp"

namespace ssbkit::report {

struct AggregateRow {
  std::string query;
  std::string benchmark;
  std::string engine;
  std::string configuration;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
  /// Successful repetitions; failures are excluded from the statistics.
  int count = 0;
  int failed = 0;
  /// Distinct hashes of the records behind the row, ';'-joined.
  std::string data_hash;
  std::string plan_hash;

  nlohmann::json to_json() const;
};

/// Groups by (engine, configuration, benchmark, query). Rows come out in
/// that key order, so the result does not depend on record order. Groups
/// whose every repetition failed keep count 0 and zero timings.
std::vector<AggregateRow> aggregate(const std::vector<harness::RunRecord>& records);

struct PairedComparison {
  int index = 0;
  std::string pair_label;
  std::string tpch_query;  // record label, e.g. TPCH-Q6
  std::string ssb_query;
  std::string engine;
  std::string configuration;
  std::optional<AggregateRow> tpch;
  std::optional<AggregateRow> ssb;
  /// tpch mean / ssb mean; empty for gaps or a zero ssb mean.
  std::optional<double> ratio;
  /// Why the pair is incomplete; empty when both sides are present.
  std::string gap;

  nlohmann::json to_json() const;
};

/// One comparison per mapping row, in mapping order, for one engine and
/// configuration. Missing sides become gap entries.
std::vector<PairedComparison> paired_report(const std::vector<AggregateRow>& tpch_rows,
                                            const std::vector<AggregateRow>& ssb_rows,
                                            const std::vector<workload::MappingRow>& mapping,
                                            const std::string& engine, const std::string& configuration);

struct FigureSpec {
  std::string file_stem;  // fig4_tpch_out_of_box, ...
  std::string title;
  std::string benchmark;
  std::string configuration;
};

/// Figures 4 to 7: TPC-H and SSB average execution time, out-of-box and
/// indexed.
const std::vector<FigureSpec>& figure_specs();

struct ReportFiles {
  std::vector<std::filesystem::path> written;
  std::string provenance_hash;
};

/// Reads every *.jsonl under `runs_dir` (sorted by name) and writes
/// aggregate.csv, paired_<configuration>.csv, fig4..fig7 CSVs,
/// plot_data.json and report_manifest.json to `out_dir`. Inputs are only
/// read.
ReportFiles write_report(const std::filesystem::path& runs_dir, const std::filesystem::path& out_dir);

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);
void write_paired_csv(std::ostream& out, const std::vector<PairedComparison>& rows, const std::string& provenance);

} // namespace ssbkit::report

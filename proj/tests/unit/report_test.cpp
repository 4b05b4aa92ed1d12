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
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "ssbkit/common/error.hpp"
#include "ssbkit/common/hash.hpp"
#include "ssbkit/report/report.hpp"
#include "ssbkit/workload/mapping.hpp"

namespace ssbkit::report {
namespace {

using harness::Configuration;
using harness::RunRecord;
using ssbkit::testing::slurp;
using ssbkit::testing::TempDir;

RunRecord record(std::string query, double ms, std::string benchmark = "ssb",
                 Configuration config = Configuration::kOutOfBox, bool failed = false) {
  RunRecord r;
  r.plan_hash = "plan-" + benchmark;
  r.data_hash = "data";
  r.engine = "sqlite";
  r.engine_version = "3";
  r.configuration = config;
  r.benchmark = std::move(benchmark);
  r.query = std::move(query);
  r.wall_ms = ms;
  r.failed = failed;
  if (failed) r.error = "boom";
  return r;
}

std::vector<RunRecord> full_run(Configuration config) {
  std::vector<RunRecord> out;
  for (const char* q : {"TPCH-Q2", "TPCH-Q3", "TPCH-Q5", "TPCH-Q6"})
    for (double t : {10.0, 12.0, 14.0}) out.push_back(record(q, t, "tpch", config));
  for (const auto& m : workload::mapping_table())
    for (double t : {4.0, 5.0, 6.0}) out.push_back(record(m.ssb_label, t, "ssb", config));
  return out;
}

TEST(Aggregate, MeanMedianBounds) {
  auto rows = aggregate({record("Q1.1", 3), record("Q1.1", 4), record("Q1.1", 5)});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].mean_ms, 4.0);
  EXPECT_DOUBLE_EQ(rows[0].median_ms, 4.0);
  EXPECT_DOUBLE_EQ(rows[0].min_ms, 3.0);
  EXPECT_DOUBLE_EQ(rows[0].max_ms, 5.0);
  EXPECT_EQ(rows[0].count, 3);
  EXPECT_EQ(rows[0].failed, 0);
  EXPECT_TRUE(aggregate({}).empty());
}

TEST(Aggregate, FailuresExcludedButCounted) {
  auto rows = aggregate({record("Q1.1", 3), record("Q1.1", 1000, "ssb", Configuration::kOutOfBox, true),
                         record("Q1.1", 5)});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].mean_ms, 4.0);
  EXPECT_EQ(rows[0].count, 2);
  EXPECT_EQ(rows[0].failed, 1);
}

TEST(Aggregate, GroupsByQueryEngineAndConfiguration) {
  auto rows = aggregate({record("Q1.1", 3), record("Q1.1", 9, "ssb", Configuration::kIndexed), record("Q1.2", 1)});
  EXPECT_EQ(rows.size(), 3u);
}

TEST(Aggregate, PermutationInvariant) {
  std::mt19937_64 rng(11);
  std::vector<RunRecord> records;
  std::uniform_real_distribution<double> ms(0.0, 100.0);
  for (int i = 0; i < 200; ++i) {
    records.push_back(record(i % 3 ? "Q1.1" : "Q2.1", ms(rng), "ssb",
                             i % 2 ? Configuration::kIndexed : Configuration::kOutOfBox, i % 17 == 0));
  }
  auto base = aggregate(records);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(records.begin(), records.end(), rng);
    auto again = aggregate(records);
    ASSERT_EQ(again.size(), base.size());
    for (std::size_t i = 0; i < base.size(); ++i) EXPECT_EQ(again[i].to_json(), base[i].to_json());
  }
  for (const auto& r : base) {
    EXPECT_LE(r.min_ms, r.mean_ms);
    EXPECT_LE(r.mean_ms, r.max_ms);
    EXPECT_GE(r.count, 1);
  }
}

TEST(Paired, MappingOrderRatiosAndGaps) {
  auto rows = aggregate(full_run(Configuration::kOutOfBox));
  std::vector<AggregateRow> tpch, ssb;
  for (const auto& r : rows) (r.benchmark == "tpch" ? tpch : ssb).push_back(r);
  auto pairs = paired_report(tpch, ssb, workload::mapping_table(), "sqlite", "out_of_box");
  ASSERT_EQ(pairs.size(), 10u);
  EXPECT_EQ(pairs[0].tpch_query, "TPCH-Q6");
  EXPECT_EQ(pairs[0].ssb_query, "Q1.1");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    EXPECT_EQ(pairs[i].index, static_cast<int>(i) + 1);
    ASSERT_TRUE(pairs[i].ratio);
    EXPECT_DOUBLE_EQ(*pairs[i].ratio, 12.0 / 5.0);
    EXPECT_TRUE(pairs[i].gap.empty());
  }

  auto equal = aggregate({record("TPCH-Q6", 7, "tpch"), record("Q1.1", 7)});
  std::vector<AggregateRow> t{equal[0].benchmark == "tpch" ? equal[0] : equal[1]};
  std::vector<AggregateRow> s{equal[0].benchmark == "ssb" ? equal[0] : equal[1]};
  auto one = paired_report(t, s, {workload::mapping_table()[0]}, "sqlite", "out_of_box");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_DOUBLE_EQ(*one[0].ratio, 1.0);

  auto gap = paired_report({}, s, workload::mapping_table(), "sqlite", "out_of_box");
  ASSERT_EQ(gap.size(), 10u);
  for (const auto& p : gap) {
    EXPECT_FALSE(p.ratio);
    EXPECT_NE(p.gap.find("TPCH-"), std::string::npos) << p.gap;
  }
}

TEST(WriteReport, EmitsTablesFiguresAndProvenance) {
  TempDir dir("report");
  auto runs = dir / "runs";
  std::filesystem::create_directories(runs);
  harness::write_records(runs / "sqlite_out_of_box.jsonl", full_run(Configuration::kOutOfBox));
  harness::write_records(runs / "sqlite_indexed.jsonl", full_run(Configuration::kIndexed));
  auto before = sha256_file(runs / "sqlite_indexed.jsonl");

  auto files = write_report(runs, dir / "report");
  EXPECT_EQ(files.provenance_hash.size(), 64u);
  for (const char* name : {"aggregate.csv", "paired_out_of_box.csv", "paired_indexed.csv", "fig4_tpch_out_of_box.csv",
                           "fig5_ssb_out_of_box.csv", "fig6_tpch_indexed.csv", "fig7_ssb_indexed.csv",
                           "plot_data.json", "report_manifest.json"})
    EXPECT_TRUE(std::filesystem::exists(dir / "report" / name)) << name;

  auto paired = slurp(dir / "report" / "paired_out_of_box.csv");
  EXPECT_EQ(std::count(paired.begin(), paired.end(), '\n'), 11);
  EXPECT_NE(paired.find(files.provenance_hash), std::string::npos);

  auto fig = slurp(dir / "report" / "fig5_ssb_out_of_box.csv");
  std::istringstream lines(fig);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "index,query,engine,mean_ms,median_ms,min_ms,max_ms,count,failed,data_hash,plan_hash,provenance");
  int n = 0;
  while (std::getline(lines, line)) {
    ++n;
    EXPECT_NE(line.find(",5.000"), std::string::npos) << line;
    EXPECT_TRUE(line.ends_with(files.provenance_hash)) << line;
  }
  EXPECT_EQ(n, 10);

  auto plot = nlohmann::json::parse(slurp(dir / "report" / "plot_data.json"));
  EXPECT_EQ(plot.at("figures").size(), 4u);
  EXPECT_EQ(plot.at("provenance"), files.provenance_hash);
  auto manifest = nlohmann::json::parse(slurp(dir / "report" / "report_manifest.json"));
  EXPECT_EQ(manifest.at("inputs").size(), 2u);

  // Pure function of the records; inputs untouched.
  auto again = write_report(runs, dir / "report2");
  EXPECT_EQ(again.provenance_hash, files.provenance_hash);
  EXPECT_EQ(slurp(dir / "report2" / "aggregate.csv"), slurp(dir / "report" / "aggregate.csv"));
  EXPECT_EQ(sha256_file(runs / "sqlite_indexed.jsonl"), before);
}

TEST(WriteReport, MissingSideBecomesGap) {
  TempDir dir("report-gap");
  auto runs = dir / "runs";
  std::filesystem::create_directories(runs);
  auto records = full_run(Configuration::kOutOfBox);
  std::erase_if(records, [](const RunRecord& r) { return r.query == "Q4.2"; });
  harness::write_records(runs / "partial.jsonl", records);
  write_report(runs, dir / "out");
  auto text = slurp(dir / "out" / "paired_out_of_box.csv");
  EXPECT_NE(text.find("no successful Q4.2 runs"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 11);
}

TEST(WriteReport, NoRecordsIsAnError) {
  TempDir dir("report-none");
  EXPECT_THROW(write_report(dir.path(), dir / "out"), Error);
}

} // namespace
} // namespace ssbkit::report

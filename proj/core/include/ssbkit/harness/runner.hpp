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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssbkit/harness/engine.hpp"
#include "ssbkit/workload/template.hpp"

namespace ssbkit::harness {

enum class Configuration { kOutOfBox, kIndexed };
std::string_view to_string(Configuration c);
Configuration parse_configuration(std::string_view text);

enum class OrderingPolicy { kSequential, kOverlapMinimizing, kSeededShuffle };
std::string_view to_string(OrderingPolicy p);
OrderingPolicy parse_ordering_policy(std::string_view text);

inline constexpr int kDefaultRepetitions = 3;
inline constexpr int kDefaultDiscardedColdRuns = 1;

struct RunPlan {
  std::string engine_id;
  Configuration configuration = Configuration::kOutOfBox;
  std::vector<workload::QueryInstance> instances;
  int repetitions = kDefaultRepetitions;
  int cold_runs_discarded = kDefaultDiscardedColdRuns;
  OrderingPolicy policy = OrderingPolicy::kSequential;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
  std::string hash() const;
};

/// Orders `instances` per `policy`. overlap_minimizing runs a greedy walk
/// from every start (next = least Jaccard overlap of dimension sets) and keeps
/// the walk with the most disjoint adjacent pairs.
RunPlan build_plan(std::vector<workload::QueryInstance> instances, std::string engine_id,
                   Configuration configuration, OrderingPolicy policy, std::uint64_t seed,
                   int repetitions = kDefaultRepetitions, int cold_runs_discarded = kDefaultDiscardedColdRuns);

/// Number of adjacent pairs whose dimension sets are disjoint.
int disjoint_adjacent_pairs(const std::vector<workload::QueryInstance>& order);

struct RunRecord {
  std::string plan_hash;
  std::string data_hash;
  std::string engine;
  std::string engine_version;
  Configuration configuration = Configuration::kOutOfBox;
  std::string benchmark;  // "ssb" or "tpch"
  std::string query;      // instance label
  int repetition = 0;     // 0-based among retained runs
  double wall_ms = 0.0;
  std::int64_t row_count = 0;
  std::string started_at;  // UTC, ISO 8601 with milliseconds
  /// Offsets from plan start on a monotonic clock.
  double start_offset_ms = 0.0;
  double end_offset_ms = 0.0;
  std::string result_hash;
  bool failed = false;
  std::string error;

  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);
};

struct ExecuteOptions {
  std::string data_hash;
  bool capture_explain = true;
  /// Calls EngineAdapter::flush_caches() before every execution.
  bool flush_caches = false;
};

struct ExecutionResult {
  std::vector<RunRecord> records;
  std::map<std::string, std::string> explain;  // label -> plan text
};

/// Runs cold_runs_discarded + repetitions executions per instance, strictly
/// sequentially in plan order. Engine errors mark the record failed and the
/// plan continues.
ExecutionResult execute(EngineAdapter& engine, const RunPlan& plan, const ExecuteOptions& options = {});

void write_records(const std::filesystem::path& file, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records(const std::filesystem::path& file);

} // namespace ssbkit::harness

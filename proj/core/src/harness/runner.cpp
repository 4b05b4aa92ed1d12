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

#include "ssbkit/harness/runner.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <numeric>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/hash.hpp"
#include "ssbkit/common/rng.hpp"
#include "ssbkit/common/strings.hpp"

namespace ssbkit::harness {

std::string_view to_string(Configuration c) {
  return c == Configuration::kOutOfBox ? "out_of_box" : "indexed";
}

Configuration parse_configuration(std::string_view text) {
  auto t = to_lower(text);
  if (t == "out_of_box" || t == "out-of-box" || t == "oob") return Configuration::kOutOfBox;
  if (t == "indexed") return Configuration::kIndexed;
  fail(ErrorKind::kInvalidArgument, fmt::format("unknown configuration '{}' (expected out_of_box or indexed)", text));
}

std::string_view to_string(OrderingPolicy p) {
  switch (p) {
    case OrderingPolicy::kSequential:
      return "sequential";
    case OrderingPolicy::kOverlapMinimizing:
      return "overlap_minimizing";
    case OrderingPolicy::kSeededShuffle:
      return "seeded_shuffle";
  }
  return "sequential";
}

OrderingPolicy parse_ordering_policy(std::string_view text) {
  auto t = to_lower(text);
  std::replace(t.begin(), t.end(), '-', '_');
  if (t == "sequential") return OrderingPolicy::kSequential;
  if (t == "overlap_minimizing" || t == "overlap") return OrderingPolicy::kOverlapMinimizing;
  if (t == "seeded_shuffle" || t == "shuffle") return OrderingPolicy::kSeededShuffle;
  fail(ErrorKind::kInvalidArgument,
       fmt::format("unknown ordering policy '{}' (expected sequential, overlap_minimizing or seeded_shuffle)", text));
}

namespace {

double jaccard(const workload::QueryInstance& a, const workload::QueryInstance& b) {
  std::size_t common = 0;
  for (auto d : a.dimensions) common += b.dimensions.count(d);
  auto total = a.dimensions.size() + b.dimensions.size() - common;
  return total == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(total);
}

bool disjoint(const workload::QueryInstance& a, const workload::QueryInstance& b) {
  return std::ranges::none_of(a.dimensions, [&](auto d) { return b.dimensions.count(d) > 0; });
}

// Greedy nearest-neighbour on Jaccard overlap, tried from every start.
std::vector<workload::QueryInstance> overlap_minimizing(const std::vector<workload::QueryInstance>& in) {
  if (in.size() < 3) return in;
  std::vector<std::size_t> best;
  int best_pairs = -1;
  double best_overlap = 0.0;
  for (std::size_t start = 0; start < in.size(); ++start) {
    std::vector<std::size_t> order{start};
    std::vector<bool> used(in.size(), false);
    used[start] = true;
    double overlap = 0.0;
    while (order.size() < in.size()) {
      std::size_t pick = in.size();
      double pick_j = 2.0;
      for (std::size_t i = 0; i < in.size(); ++i) {
        if (used[i]) continue;
        double j = jaccard(in[order.back()], in[i]);
        if (j < pick_j) {
          pick = i;
          pick_j = j;
        }
      }
      used[pick] = true;
      overlap += pick_j;
      order.push_back(pick);
    }
    int pairs = 0;
    for (std::size_t i = 1; i < order.size(); ++i) pairs += disjoint(in[order[i - 1]], in[order[i]]);
    if (pairs > best_pairs || (pairs == best_pairs && overlap < best_overlap)) {
      best = order;
      best_pairs = pairs;
      best_overlap = overlap;
    }
  }
  std::vector<workload::QueryInstance> out;
  for (auto i : best) out.push_back(in[i]);
  return out;
}

std::string utc_now() {
  auto now = std::chrono::system_clock::now();
  auto t = std::chrono::system_clock::to_time_t(now);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  return fmt::format("{:%Y-%m-%dT%H:%M:%S}.{:03d}Z", tm, ms);
}

} // namespace

int disjoint_adjacent_pairs(const std::vector<workload::QueryInstance>& order) {
  int pairs = 0;
  for (std::size_t i = 1; i < order.size(); ++i) pairs += disjoint(order[i - 1], order[i]);
  return pairs;
}

RunPlan build_plan(std::vector<workload::QueryInstance> instances, std::string engine_id,
                   Configuration configuration, OrderingPolicy policy, std::uint64_t seed, int repetitions,
                   int cold_runs_discarded) {
  if (repetitions < 1) fail(ErrorKind::kInvalidArgument, "repetitions must be at least 1");
  if (cold_runs_discarded < 0) fail(ErrorKind::kInvalidArgument, "discarded cold runs must be non-negative");
  RunPlan plan;
  plan.engine_id = std::move(engine_id);
  plan.configuration = configuration;
  plan.repetitions = repetitions;
  plan.cold_runs_discarded = cold_runs_discarded;
  plan.policy = policy;
  plan.seed = seed;
  switch (policy) {
    case OrderingPolicy::kSequential:
      plan.instances = std::move(instances);
      break;
    case OrderingPolicy::kOverlapMinimizing:
      plan.instances = overlap_minimizing(instances);
      break;
    case OrderingPolicy::kSeededShuffle: {
      auto rng = Substream(seed).child("plan");
      for (std::size_t i = instances.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
        std::swap(instances[i - 1], instances[j]);
      }
      plan.instances = std::move(instances);
      break;
    }
  }
  return plan;
}

nlohmann::json RunPlan::to_json() const {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& q : instances) items.push_back(q.to_json());
  return {{"engine", engine_id},
          {"configuration", to_string(configuration)},
          {"policy", to_string(policy)},
          {"seed", seed},
          {"repetitions", repetitions},
          {"cold_runs_discarded", cold_runs_discarded},
          {"instances", items}};
}

std::string RunPlan::hash() const { return sha256_hex(to_json().dump()); }

nlohmann::json RunRecord::to_json() const {
  return {{"plan_hash", plan_hash},
          {"data_hash", data_hash},
          {"engine", engine},
          {"engine_version", engine_version},
          {"configuration", to_string(configuration)},
          {"benchmark", benchmark},
          {"query", query},
          {"repetition", repetition},
          {"wall_ms", wall_ms},
          {"row_count", row_count},
          {"started_at", started_at},
          {"start_offset_ms", start_offset_ms},
          {"end_offset_ms", end_offset_ms},
          {"result_hash", result_hash},
          {"failed", failed},
          {"error", error}};
}

RunRecord RunRecord::from_json(const nlohmann::json& j) {
  try {
    RunRecord r;
    r.plan_hash = j.at("plan_hash").get<std::string>();
    r.data_hash = j.value("data_hash", "");
    r.engine = j.at("engine").get<std::string>();
    r.engine_version = j.value("engine_version", "");
    r.configuration = parse_configuration(j.at("configuration").get<std::string>());
    r.benchmark = j.at("benchmark").get<std::string>();
    r.query = j.at("query").get<std::string>();
    r.repetition = j.at("repetition").get<int>();
    r.wall_ms = j.at("wall_ms").get<double>();
    r.row_count = j.value("row_count", std::int64_t{0});
    r.started_at = j.value("started_at", "");
    r.start_offset_ms = j.value("start_offset_ms", 0.0);
    r.end_offset_ms = j.value("end_offset_ms", 0.0);
    r.result_hash = j.value("result_hash", "");
    r.failed = j.value("failed", false);
    r.error = j.value("error", "");
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, fmt::format("malformed run record: {}", e.what()));
  }
}

ExecutionResult execute(EngineAdapter& engine, const RunPlan& plan, const ExecuteOptions& options) {
  using Clock = std::chrono::steady_clock;
  ExecutionResult result;
  auto plan_hash = plan.hash();
  auto version = engine.version();
  auto origin = Clock::now();
  auto offset = [&](Clock::time_point t) { return std::chrono::duration<double, std::milli>(t - origin).count(); };
  for (const auto& q : plan.instances) {
    auto label = q.label();
    if (options.capture_explain && !result.explain.count(label)) {
      try {
        result.explain[label] = engine.explain(q.sql);
      } catch (const Error& e) {
        result.explain[label] = fmt::format("explain failed: {}", e.what());
      }
    }
    for (int k = 0; k < plan.cold_runs_discarded + plan.repetitions; ++k) {
      if (options.flush_caches) engine.flush_caches();
      RunRecord r;
      r.plan_hash = plan_hash;
      r.data_hash = options.data_hash;
      r.engine = engine.id();
      r.engine_version = version;
      r.configuration = plan.configuration;
      r.benchmark = q.benchmark == datagen::Benchmark::kSsb ? "ssb" : "tpch";
      r.query = label;
      r.started_at = utc_now();
      auto t0 = Clock::now();
      try {
        auto rs = engine.query(q.sql);
        auto t1 = Clock::now();
        r.row_count = rs.row_count();
        r.result_hash = rs.multiset_hash();
        r.start_offset_ms = offset(t0);
        r.end_offset_ms = offset(t1);
      } catch (const Error& e) {
        auto t1 = Clock::now();
        r.failed = true;
        r.error = e.what();
        r.start_offset_ms = offset(t0);
        r.end_offset_ms = offset(t1);
      }
      r.wall_ms = r.end_offset_ms - r.start_offset_ms;
      if (k < plan.cold_runs_discarded) continue;
      r.repetition = k - plan.cold_runs_discarded;
      result.records.push_back(std::move(r));
    }
  }
  return result;
}

void write_records(const std::filesystem::path& file, const std::vector<RunRecord>& records) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, fmt::format("cannot write {}", file.string()));
  for (const auto& r : records) out << r.to_json().dump() << '\n';
  if (!out) fail(ErrorKind::kIo, fmt::format("write failed for {}", file.string()));
}

std::vector<RunRecord> read_records(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(ErrorKind::kIo, fmt::format("cannot read {}", file.string()));
  std::vector<RunRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(RunRecord::from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::kParse, fmt::format("{}:{}: {}", file.string(), line_no, e.what()));
    } catch (const Error& e) {
      fail(ErrorKind::kParse, fmt::format("{}:{}: {}", file.string(), line_no, e.what()));
    }
  }
  return out;
}

} // namespace ssbkit::harness

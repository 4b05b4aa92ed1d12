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

#include "ssbkit/datagen/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <future>

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/hash.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/datagen/tbl.hpp"

namespace ssbkit::datagen {

namespace fs = std::filesystem;

namespace {

std::string_view subdir(Benchmark b) { return b == Benchmark::kSsb ? "ssb" : "tpch"; }

nlohmann::json outputs_json(const std::vector<TableOutput>& outputs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : outputs) {
    out.push_back({{"table", t.table}, {"file", t.file}, {"rows", t.rows}, {"sha256", t.sha256}});
  }
  return out;
}

} // namespace

fs::path table_path(const fs::path& dir, Benchmark benchmark, std::string_view table) {
  return dir / subdir(benchmark) / (to_lower(table) + ".tbl");
}

nlohmann::json DatasetManifest::to_json() const {
  return {{"format", "ssbkit-dataset/1"},
          {"spec", spec.to_json()},
          {"spec_hash", spec.hash()},
          {"ssb", outputs_json(ssb)},
          {"tpch", outputs_json(tpch)}};
}

std::string DatasetManifest::hash() const { return sha256_hex(to_json().dump()); }

DatasetManifest generate_dataset(const GenSpec& spec, const GenerateOptions& options) {
  spec.validate();
  if (spec.output_dir.empty()) fail(ErrorKind::kInvalidArgument, "output directory is required");

  struct Job {
    Benchmark benchmark;
    std::string table;
  };
  std::vector<Job> jobs;
  auto wanted = [&](const std::string& t) {
    return options.tables.empty() ||
           std::ranges::any_of(options.tables, [&](const auto& w) { return iequals(w, t); });
  };
  if (options.ssb) {
    auto catalog = schema::build_ssb_catalog(spec.ssb);
    for (const auto& t : catalog.tables()) {
      if (wanted(t.name)) jobs.push_back({Benchmark::kSsb, t.name});
    }
  }
  if (options.tpch) {
    auto catalog = schema::build_tpch_reference_catalog();
    for (const auto& t : catalog.tables()) {
      if (wanted(t.name)) jobs.push_back({Benchmark::kTpch, t.name});
    }
  }
  for (const auto& w : options.tables) {
    if (std::ranges::none_of(jobs, [&](const Job& j) { return iequals(j.table, w); })) {
      fail(ErrorKind::kNotFound, fmt::format("unknown table '{}'", w));
    }
  }

  std::error_code ec;
  for (auto b : {Benchmark::kSsb, Benchmark::kTpch}) {
    fs::create_directories(spec.output_dir / subdir(b), ec);
    if (ec) fail(ErrorKind::kIo, fmt::format("cannot create '{}': {}", spec.output_dir.string(), ec.message()));
  }

  auto run = [&spec](const Job& job) {
    auto stream = generate_table(spec, job.table, job.benchmark);
    auto path = table_path(spec.output_dir, job.benchmark, job.table);
    auto r = write_tbl(*stream, path);
    return TableOutput{job.table, fs::relative(path, spec.output_dir).generic_string(), r.rows, r.sha256};
  };

  std::vector<TableOutput> results(jobs.size());
  unsigned threads = std::max(1u, options.threads);
  for (std::size_t i = 0; i < jobs.size(); i += threads) {
    std::vector<std::future<TableOutput>> batch;
    for (std::size_t j = i; j < std::min(jobs.size(), i + threads); ++j) {
      batch.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, run, jobs[j]));
    }
    for (std::size_t j = 0; j < batch.size(); ++j) results[i + j] = batch[j].get();
  }

  DatasetManifest manifest;
  manifest.spec = spec;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    (jobs[i].benchmark == Benchmark::kSsb ? manifest.ssb : manifest.tpch).push_back(results[i]);
  }
  std::ofstream out(spec.output_dir / kManifestFile, std::ios::binary | std::ios::trunc);
  out << manifest.to_json().dump(2) << '\n';
  if (!out) fail(ErrorKind::kIo, "failed to write dataset manifest");
  return manifest;
}

} // namespace ssbkit::datagen

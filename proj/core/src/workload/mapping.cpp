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

#include "ssbkit/workload/mapping.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "embedded.hpp"
#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"

namespace ssbkit::workload {

namespace detail {

std::string_view embedded_file(std::string_view path) {
  for (const auto& [name, content] : embedded_files()) {
    if (name == path) return content;
  }
  fail(ErrorKind::kNotFound, fmt::format("embedded query file '{}' is missing", path));
}

} // namespace detail

const std::vector<MappingRow>& mapping_table() {
  static const std::vector<MappingRow> rows = [] {
    std::vector<MappingRow> out;
    auto j = nlohmann::json::parse(detail::embedded_file("mapping.json"));
    for (const auto& r : j.at("pairs")) {
      out.push_back({r.at("index").get<int>(), r.at("tpch").get<std::string>(),
                     r.at("pair_label").get<std::string>(), r.at("ssb").get<std::string>()});
    }
    return out;
  }();
  return rows;
}

namespace {

const MappingRow* find_row(std::string_view label) {
  auto wanted = to_upper(trim(label));
  for (const auto& r : mapping_table()) {
    if (r.ssb_label == wanted) return &r;
  }
  for (const auto& r : mapping_table()) {
    if (r.pair_label == wanted) return &r;
  }
  return nullptr;
}

} // namespace

std::string tpch_counterpart(std::string_view label) {
  if (const auto* r = find_row(label)) return r->tpch_id;
  fail(ErrorKind::kNotFound, fmt::format("label '{}' is not in the TPC-H pairing table", label));
}

std::string canonical_label(std::string_view label) {
  if (const auto* r = find_row(label)) return r->ssb_label;
  return to_upper(trim(label));
}

} // namespace ssbkit::workload

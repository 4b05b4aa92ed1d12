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

#include "ssbkit/compression/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/rng.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/datagen/dataset.hpp"
#include "ssbkit/datagen/tbl.hpp"

namespace ssbkit::compression {

namespace {

struct ColumnSlot {
  std::size_t field = 0;
  const schema::ColumnDef* def = nullptr;
  ValueType type = ValueType::kInteger;
  int scale = 0;
  std::vector<std::int64_t> values;
};

std::int64_t as_integer(const Value& v, const schema::ColumnDef& def) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* d = std::get_if<Decimal>(&v)) return d->rescaled(def.type.scale).units;
  if (const auto* d = std::get_if<Date>(&v)) return d->year() * 10000LL + d->month() * 100LL + d->day();
  fail(ErrorKind::kInvalidArgument, fmt::format("{} holds a NULL or non-numeric value", def.name));
}

std::vector<ColumnVector> load_columns(const std::filesystem::path& tbl_file, const schema::TableDef& table,
                                       const std::vector<std::string>& columns) {
  auto stored = table.stored_columns();
  std::vector<ColumnSlot> slots;
  for (const auto& name : columns) {
    auto it = std::ranges::find_if(stored, [&](const auto* c) { return iequals(c->name, name); });
    if (it == stored.end()) {
      fail(ErrorKind::kNotFound, fmt::format("{} has no stored column {}", table.name, name));
    }
    const auto* def = *it;
    ColumnSlot slot;
    slot.field = static_cast<std::size_t>(it - stored.begin());
    slot.def = def;
    switch (def->type.kind) {
      case schema::LogicalKind::kInteger:
        break;
      case schema::LogicalKind::kDecimal:
        slot.type = ValueType::kDecimal;
        slot.scale = def->type.scale;
        break;
      case schema::LogicalKind::kCalendarDate:
        slot.type = ValueType::kDate;
        break;
      default:
        fail(ErrorKind::kInvalidArgument, fmt::format("{} is a text column; the lab encodes numeric columns only",
                                                      def->name));
    }
    slots.push_back(std::move(slot));
  }
  std::ifstream in(tbl_file);
  if (!in) fail(ErrorKind::kNotFound, fmt::format("cannot open {}", tbl_file.string()));
  std::string line;
  std::int64_t line_no = 0;
  std::vector<std::string_view> fields;
  while (std::getline(in, line)) {
    ++line_no;
    fields.clear();
    std::string_view rest(line);
    for (auto bar = rest.find('|'); bar != std::string_view::npos; bar = rest.find('|')) {
      fields.push_back(rest.substr(0, bar));
      rest.remove_prefix(bar + 1);
    }
    for (auto& slot : slots) {
      if (slot.field >= fields.size()) {
        fail(ErrorKind::kParse, fmt::format("{}:{}: expected {} fields", tbl_file.string(), line_no, stored.size()));
      }
      try {
        slot.values.push_back(as_integer(datagen::parse_field(*slot.def, fields[slot.field]), *slot.def));
      } catch (const Error& e) {
        fail(ErrorKind::kParse, fmt::format("{}:{}: {}", tbl_file.string(), line_no, e.what()));
      }
    }
  }
  std::vector<ColumnVector> out;
  for (auto& slot : slots) out.emplace_back(std::move(slot.values), slot.type, slot.scale);
  return out;
}

template <typename F>
double fastest_ms(int runs, F&& fn) {
  double best = 0.0;
  for (int i = 0; i < std::max(runs, 1); ++i) {
    auto start = std::chrono::steady_clock::now();
    fn();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (i == 0 || ms < best) best = ms;
  }
  return best;
}

std::int64_t plain_sum(const std::vector<std::int64_t>& values) {
  __int128 total = 0;
  for (auto v : values) total += v;
  if (total > INT64_MAX || total < INT64_MIN) fail(ErrorKind::kOverflow, "sum exceeds the int64 range");
  return static_cast<std::int64_t>(total);
}

std::vector<std::int64_t> permuted(const std::vector<std::int64_t>& values, const std::vector<std::size_t>& order) {
  std::vector<std::int64_t> out;
  out.reserve(values.size());
  for (auto i : order) out.push_back(values[i]);
  return out;
}

void measure(const std::string& name, const ColumnVector& cv, bool sorted, int runs,
             std::vector<CompressionRow>& out) {
  auto h = entropy(cv).entropy_bits;
  volatile std::int64_t sink = 0;
  CompressionRow plain{name, "plain", sorted, cv.raw_bytes(), cv.raw_bytes(), 1.0, 0.0, 0.0, 0.0, 0, h};
  plain.sum = plain_sum(cv.values());
  plain.agg_ms = fastest_ms(runs, [&] { sink = plain_sum(cv.values()); });
  plain.agg_decoded_ms = plain.agg_ms;
  out.push_back(plain);

  std::vector<Codec> codecs{Codec::kRle, Codec::kNullSuppress};
  if (heavy_compressor()) codecs.push_back(Codec::kHeavy);
  for (auto codec : codecs) {
    EncodedColumn e;
    CompressionRow row{name, std::string(to_string(codec)), sorted, cv.raw_bytes(), 0, 0.0, 0.0, 0.0, 0.0, 0, h};
    row.encode_ms = fastest_ms(runs, [&] { e = encode(cv, codec); });
    row.encoded_bytes = e.encoded_bytes();
    row.ratio = compression_ratio(cv, e);
    if (decode(e) != cv) fail(ErrorKind::kEngine, fmt::format("{} round trip failed for {}", to_string(codec), name));
    row.agg_decoded_ms = fastest_ms(runs, [&] { sink = plain_sum(decode(e).values()); });
    if (codec == Codec::kRle) {
      row.sum = sum_on_compressed(e);
      row.agg_ms = fastest_ms(runs, [&] { sink = sum_on_compressed(e); });
    } else {
      row.sum = plain_sum(decode(e).values());
      row.agg_ms = row.agg_decoded_ms;
    }
    if (row.sum != plain.sum) fail(ErrorKind::kEngine, fmt::format("{} sum mismatch for {}", to_string(codec), name));
    out.push_back(std::move(row));
  }
  (void)sink;
}

} // namespace

ColumnVector load_column(const std::filesystem::path& tbl_file, const schema::TableDef& table,
                         std::string_view column) {
  return std::move(load_columns(tbl_file, table, {std::string(column)}).front());
}

std::vector<CompressionRow> compression_benchmark(const std::filesystem::path& dataset_dir,
                                                  const CompressionOptions& options) {
  auto catalog = schema::build_ssb_catalog();
  const auto& fact = *catalog.fact_table();
  auto file = datagen::table_path(dataset_dir, datagen::Benchmark::kSsb, fact.name);
  if (!std::filesystem::is_regular_file(file)) {
    fail(ErrorKind::kNotFound, fmt::format("missing data file {} (run `ssbkit gen` first)", file.string()));
  }
  std::vector<std::string> wanted = options.columns;
  for (const auto& k : options.sort_keys) {
    if (std::ranges::none_of(wanted, [&](const auto& w) { return iequals(w, k); })) wanted.push_back(k);
  }
  auto loaded = load_columns(file, fact, wanted);
  std::size_t n = loaded.empty() ? 0 : loaded.front().size();

  std::vector<std::size_t> shuffle(n);
  std::iota(shuffle.begin(), shuffle.end(), std::size_t{0});
  auto rng = Substream(options.seed).child("compression").child("shuffle");
  for (std::size_t i = n; i > 1; --i) {
    std::swap(shuffle[i - 1], shuffle[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
  }

  std::vector<std::size_t> key_order;
  if (!options.sort_keys.empty()) {
    std::vector<const std::vector<std::int64_t>*> keys;
    for (const auto& k : options.sort_keys) {
      auto idx = static_cast<std::size_t>(
          std::ranges::find_if(wanted, [&](const auto& w) { return iequals(w, k); }) - wanted.begin());
      keys.push_back(&loaded[idx].values());
    }
    key_order.resize(n);
    std::iota(key_order.begin(), key_order.end(), std::size_t{0});
    std::ranges::stable_sort(key_order, [&](std::size_t a, std::size_t b) {
      for (const auto* k : keys) {
        if ((*k)[a] != (*k)[b]) return (*k)[a] < (*k)[b];
      }
      return false;
    });
  }

  std::vector<CompressionRow> rows;
  for (std::size_t c = 0; c < options.columns.size(); ++c) {
    const auto& col = loaded[c];
    auto name = fact.find_column(options.columns[c])->name;
    ColumnVector shuffled(permuted(col.values(), shuffle), col.type(), col.scale());
    ColumnVector ordered =
        key_order.empty() ? col.sorted() : ColumnVector(permuted(col.values(), key_order), col.type(), col.scale());
    measure(name, shuffled, false, options.timing_runs, rows);
    measure(name, ordered, true, options.timing_runs, rows);
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<CompressionRow>& rows) {
  out << "column,codec,sorted,ratio,encode_ms,agg_ms,agg_decoded_ms\n";
  for (const auto& r : rows) {
    fmt::print(out, "{},{},{},{:.4f},{:.4f},{:.4f},{:.4f}\n", r.column, r.codec, r.sorted ? "true" : "false",
               r.ratio, r.encode_ms, r.agg_ms, r.agg_decoded_ms);
  }
}

} // namespace ssbkit::compression

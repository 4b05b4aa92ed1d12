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
#include <ostream>
#include <string>
#include <vector>

#include "ssbkit/compression/codec.hpp"
#include "ssbkit/schema/catalog.hpp"

namespace ssbkit::compression {

/// Reads one numeric column of a .tbl file. Decimals become scaled
/// integers, dates yyyymmdd keys. Throws Error(kInvalidArgument) for text
/// columns and Error(kNotFound) for missing files or columns.
ColumnVector load_column(const std::filesystem::path& tbl_file, const schema::TableDef& table,
                         std::string_view column);

struct CompressionRow {
  std::string column;
  /// "plain" for the uncompressed baseline, otherwise a codec name.
  std::string codec;
  bool sorted = false;
  std::uint64_t raw_bytes = 0;
  std::uint64_t encoded_bytes = 0;
  double ratio = 1.0;
  double encode_ms = 0.0;
  /// SUM over the column as stored: on the runs for rle, after decoding
  /// for the other codecs, a plain scan for the baseline.
  double agg_ms = 0.0;
  /// SUM after a full decode, for every codec.
  double agg_decoded_ms = 0.0;
  std::int64_t sum = 0;
  double entropy_bits = 0.0;
};

struct CompressionOptions {
  std::vector<std::string> columns = {"LO_ORDERDATE", "LO_DISCOUNT", "LO_QUANTITY", "LO_EXTENDEDPRICE"};
  /// Row order of the sorted variant. Empty: each column sorted by itself.
  std::vector<std::string> sort_keys;
  /// Seed of the shuffle that produces the unsorted variant.
  std::uint64_t seed = 42;
  /// Timings keep the fastest of this many runs.
  int timing_runs = 3;
};

/// Reads LINEORDER from `dataset_dir`/ssb and measures every selected column
/// under plain, rle, null_suppress and (when configured) heavy, both
/// shuffled and sorted.
std::vector<CompressionRow> compression_benchmark(const std::filesystem::path& dataset_dir,
                                                  const CompressionOptions& options = {});

/// Columns: column,codec,sorted,ratio,encode_ms,agg_ms,agg_decoded_ms.
void write_csv(std::ostream& out, const std::vector<CompressionRow>& rows);

} // namespace ssbkit::compression

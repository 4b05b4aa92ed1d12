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
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>
#include <utility>

namespace ssbkit::compression {

/// Logical type of a column. Decimals are held as scaled integers and
/// dates as yyyymmdd keys, so every column is a vector of int64.
enum class ValueType : std::uint8_t { kInteger = 0, kDate = 1, kDecimal = 2 };

enum class Sortedness { kUnsorted, kSorted, kRunsPresent };
std::string_view to_string(Sortedness s);

class ColumnVector {
 public:
  ColumnVector() = default;
  /// Detects the sortedness flag from the values.
  explicit ColumnVector(std::vector<std::int64_t> values, ValueType type = ValueType::kInteger, int scale = 0);
  /// Throws Error(kInvalidArgument) when `claimed` is kSorted and the
  /// values are not non-decreasing.
  ColumnVector(std::vector<std::int64_t> values, Sortedness claimed, ValueType type = ValueType::kInteger,
               int scale = 0);

  const std::vector<std::int64_t>& values() const& { return values_; }
  std::vector<std::int64_t> values() && { return std::move(values_); }
  ValueType type() const { return type_; }
  int scale() const { return scale_; }
  Sortedness sortedness() const { return sortedness_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// Fixed-width size of the logical type: 8 bytes per value.
  std::uint64_t raw_bytes() const { return values_.size() * sizeof(std::int64_t); }

  ColumnVector sorted() const;

  bool operator==(const ColumnVector& other) const {
    return type_ == other.type_ && scale_ == other.scale_ && values_ == other.values_;
  }

 private:
  std::vector<std::int64_t> values_;
  ValueType type_ = ValueType::kInteger;
  int scale_ = 0;
  Sortedness sortedness_ = Sortedness::kSorted;
};

Sortedness detect_sortedness(std::span<const std::int64_t> values);

enum class Codec : std::uint8_t { kRle = 1, kNullSuppress = 2, kHeavy = 3 };
std::string_view to_string(Codec c);
Codec parse_codec(std::string_view text);

struct EncodedColumn {
  Codec codec = Codec::kRle;
  ValueType type = ValueType::kInteger;
  int scale = 0;
  std::uint32_t original_length = 0;
  /// Number of runs for rle, otherwise 0.
  std::uint32_t run_count = 0;
  std::vector<std::uint8_t> payload;

  std::uint64_t encoded_bytes() const { return payload.size(); }
};

struct Run {
  std::int64_t value = 0;
  std::uint32_t length = 0;
  bool operator==(const Run&) const = default;
};

/// Payload: per run, value as little-endian int64 then length as
/// little-endian uint32 (12 bytes per run).
EncodedColumn rle_encode(const ColumnVector& v);
std::vector<Run> rle_runs(const EncodedColumn& e);

/// Groups of 4 values, each group led by one tag byte holding four 2-bit
/// tags (value i in bits 2i..2i+1). Tag 0: value is zero, no bytes. Tags 1
/// and 2: 1 or 2 little-endian bytes. Tag 3: a length byte n in 3..8
/// followed by n bytes. Negative values are stored as their two's
/// complement and always take 8 bytes.
EncodedColumn null_suppress_encode(const ColumnVector& v);

/// Byte count null suppression spends on one value (excluding tags).
int null_suppressed_width(std::int64_t value);

/// General-purpose byte compressor behind the heavy codec.
class HeavyCompressor {
 public:
  virtual ~HeavyCompressor() = default;
  virtual std::string name() const = 0;
  virtual std::vector<std::uint8_t> compress(std::span<const std::uint8_t> bytes) const = 0;
  virtual std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> bytes,
                                               std::size_t original_size) const = 0;
};

/// The compressor chosen at build configuration (SSBKIT_HEAVY_CODEC), or a
/// replacement installed with set_heavy_compressor(). Null when none.
const HeavyCompressor* heavy_compressor();
void set_heavy_compressor(std::shared_ptr<const HeavyCompressor> compressor);

/// Compresses the fixed-width little-endian image of the column. Throws
/// Error(kNotFound) when no heavy compressor is configured.
EncodedColumn heavy_encode(const ColumnVector& v);

EncodedColumn encode(const ColumnVector& v, Codec codec);
ColumnVector decode(const EncodedColumn& e);

/// Persisted form: 16-byte header followed by the payload. Header fields,
/// all little-endian: magic u16 0x4353 ("SC"), codec u8, type u8 (low
/// nibble ValueType, high nibble decimal scale), original length u32,
/// payload length u32, CRC-32 of the payload u32.
std::vector<std::uint8_t> serialize(const EncodedColumn& e);
EncodedColumn deserialize(std::span<const std::uint8_t> bytes);

inline constexpr std::size_t kHeaderBytes = 16;
inline constexpr std::uint16_t kMagic = 0x4353;

struct EntropyReport {
  std::string column;
  double entropy_bits = 0.0;
  std::uint64_t distinct_count = 0;
  std::uint64_t length = 0;
};

/// Shannon entropy of the empirical value distribution. Throws
/// Error(kInvalidArgument) on an empty column.
EntropyReport entropy(const ColumnVector& v, std::string column = {});

/// Sum over an rle column computed from the runs alone. Throws
/// Error(kInvalidArgument) for other codecs and Error(kOverflow) when the
/// total leaves int64.
std::int64_t sum_on_compressed(const EncodedColumn& e);

/// GROUP BY value, COUNT(*) computed from the runs alone.
std::map<std::int64_t, std::int64_t> count_by_value_on_compressed(const EncodedColumn& e);

/// Raw bytes over encoded payload bytes (header excluded).
double compression_ratio(const ColumnVector& v, const EncodedColumn& e);

} // namespace ssbkit::compression

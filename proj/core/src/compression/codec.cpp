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

#include "ssbkit/compression/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include <fmt/format.h>
#include <zlib.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"

namespace ssbkit::compression {

std::string_view to_string(Sortedness s) {
  switch (s) {
    case Sortedness::kUnsorted:
      return "unsorted";
    case Sortedness::kSorted:
      return "sorted";
    case Sortedness::kRunsPresent:
      return "runs_present";
  }
  return "unsorted";
}

Sortedness detect_sortedness(std::span<const std::int64_t> values) {
  bool sorted = true;
  bool runs = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) sorted = false;
    if (values[i] == values[i - 1]) runs = true;
  }
  if (sorted) return Sortedness::kSorted;
  return runs ? Sortedness::kRunsPresent : Sortedness::kUnsorted;
}

ColumnVector::ColumnVector(std::vector<std::int64_t> values, ValueType type, int scale)
    : values_(std::move(values)), type_(type), scale_(scale), sortedness_(detect_sortedness(values_)) {}

ColumnVector::ColumnVector(std::vector<std::int64_t> values, Sortedness claimed, ValueType type, int scale)
    : ColumnVector(std::move(values), type, scale) {
  if (claimed == Sortedness::kSorted && sortedness_ != Sortedness::kSorted) {
    fail(ErrorKind::kInvalidArgument, "column flagged sorted but values decrease");
  }
  if (claimed == Sortedness::kRunsPresent && sortedness_ == Sortedness::kUnsorted) {
    fail(ErrorKind::kInvalidArgument, "column flagged runs_present but no adjacent values repeat");
  }
}

ColumnVector ColumnVector::sorted() const {
  auto v = values_;
  std::sort(v.begin(), v.end());
  return ColumnVector(std::move(v), type_, scale_);
}

std::string_view to_string(Codec c) {
  switch (c) {
    case Codec::kRle:
      return "rle";
    case Codec::kNullSuppress:
      return "null_suppress";
    case Codec::kHeavy:
      return "heavy";
  }
  return "rle";
}

Codec parse_codec(std::string_view text) {
  auto t = to_lower(text);
  if (t == "rle") return Codec::kRle;
  if (t == "null_suppress" || t == "ns") return Codec::kNullSuppress;
  if (t == "heavy") return Codec::kHeavy;
  fail(ErrorKind::kInvalidArgument, fmt::format("unknown codec '{}' (expected rle, null_suppress or heavy)", text));
}

namespace {

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t pos, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
  return v;
}

std::uint32_t checked_length(std::size_t n) {
  if (n > UINT32_MAX) fail(ErrorKind::kOverflow, fmt::format("column of {} values exceeds the 32-bit length field", n));
  return static_cast<std::uint32_t>(n);
}

EncodedColumn shell(const ColumnVector& v, Codec codec) {
  EncodedColumn e;
  e.codec = codec;
  e.type = v.type();
  e.scale = v.scale();
  e.original_length = checked_length(v.size());
  return e;
}

constexpr std::size_t kRunBytes = 12;

std::vector<std::uint8_t> raw_image(const ColumnVector& v) {
  std::vector<std::uint8_t> out;
  out.reserve(v.raw_bytes());
  for (auto x : v.values()) put_le(out, static_cast<std::uint64_t>(x), 8);
  return out;
}

class ZlibCompressor final : public HeavyCompressor {
 public:
  std::string name() const override { return std::string("zlib ") + zlibVersion(); }

  std::vector<std::uint8_t> compress(std::span<const std::uint8_t> bytes) const override {
    uLongf size = compressBound(bytes.size());
    std::vector<std::uint8_t> out(size);
    if (compress2(out.data(), &size, bytes.data(), bytes.size(), Z_DEFAULT_COMPRESSION) != Z_OK) {
      fail(ErrorKind::kEngine, "zlib compression failed");
    }
    out.resize(size);
    return out;
  }

  std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> bytes,
                                       std::size_t original_size) const override {
    std::vector<std::uint8_t> out(original_size);
    uLongf size = original_size;
    if (uncompress(out.data(), &size, bytes.data(), bytes.size()) != Z_OK || size != original_size) {
      fail(ErrorKind::kParse, "heavy payload is corrupt");
    }
    return out;
  }
};

struct HeavySlot {
  std::mutex mu;
#ifdef SSBKIT_HEAVY_ZLIB
  std::shared_ptr<const HeavyCompressor> compressor = std::make_shared<ZlibCompressor>();
#else
  std::shared_ptr<const HeavyCompressor> compressor;
#endif
};

HeavySlot& heavy_slot() {
  static HeavySlot slot;
  return slot;
}

} // namespace

const HeavyCompressor* heavy_compressor() {
  auto& s = heavy_slot();
  std::lock_guard lock(s.mu);
  return s.compressor.get();
}

void set_heavy_compressor(std::shared_ptr<const HeavyCompressor> compressor) {
  auto& s = heavy_slot();
  std::lock_guard lock(s.mu);
  s.compressor = std::move(compressor);
}

EncodedColumn rle_encode(const ColumnVector& v) {
  auto e = shell(v, Codec::kRle);
  const auto& xs = v.values();
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i + 1;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    put_le(e.payload, static_cast<std::uint64_t>(xs[i]), 8);
    put_le(e.payload, j - i, 4);
    ++e.run_count;
    i = j;
  }
  return e;
}

std::vector<Run> rle_runs(const EncodedColumn& e) {
  if (e.codec != Codec::kRle) fail(ErrorKind::kInvalidArgument, "not an rle column");
  if (e.payload.size() % kRunBytes != 0) fail(ErrorKind::kParse, "rle payload is not a whole number of runs");
  std::vector<Run> runs;
  runs.reserve(e.payload.size() / kRunBytes);
  std::uint64_t total = 0;
  for (std::size_t pos = 0; pos < e.payload.size(); pos += kRunBytes) {
    Run r{static_cast<std::int64_t>(get_le(e.payload, pos, 8)), static_cast<std::uint32_t>(get_le(e.payload, pos + 8, 4))};
    if (r.length == 0) fail(ErrorKind::kParse, "rle run of length zero");
    total += r.length;
    runs.push_back(r);
  }
  if (total != e.original_length) {
    fail(ErrorKind::kParse, fmt::format("rle runs cover {} values, header says {}", total, e.original_length));
  }
  return runs;
}

int null_suppressed_width(std::int64_t value) {
  auto u = static_cast<std::uint64_t>(value);
  return (64 - std::countl_zero(u) + 7) / 8;
}

EncodedColumn null_suppress_encode(const ColumnVector& v) {
  auto e = shell(v, Codec::kNullSuppress);
  const auto& xs = v.values();
  for (std::size_t g = 0; g < xs.size(); g += 4) {
    auto tag_pos = e.payload.size();
    e.payload.push_back(0);
    std::uint8_t tags = 0;
    for (std::size_t k = 0; k < 4 && g + k < xs.size(); ++k) {
      int width = null_suppressed_width(xs[g + k]);
      int tag = std::min(width, 3);
      tags |= static_cast<std::uint8_t>(tag << (2 * k));
      if (tag == 3) e.payload.push_back(static_cast<std::uint8_t>(width));
      put_le(e.payload, static_cast<std::uint64_t>(xs[g + k]), width);
    }
    e.payload[tag_pos] = tags;
  }
  return e;
}

namespace {

std::vector<std::int64_t> null_suppress_decode(const EncodedColumn& e) {
  std::vector<std::int64_t> out;
  out.reserve(e.original_length);
  std::span<const std::uint8_t> p(e.payload);
  std::size_t pos = 0;
  auto need = [&](std::size_t n) {
    if (pos + n > p.size()) fail(ErrorKind::kParse, "null-suppressed payload is truncated");
  };
  while (out.size() < e.original_length) {
    need(1);
    std::uint8_t tags = p[pos++];
    for (std::size_t k = 0; k < 4 && out.size() < e.original_length; ++k) {
      int width = (tags >> (2 * k)) & 3;
      if (width == 3) {
        need(1);
        width = p[pos++];
        if (width < 3 || width > 8) fail(ErrorKind::kParse, fmt::format("invalid value length {}", width));
      }
      need(static_cast<std::size_t>(width));
      out.push_back(static_cast<std::int64_t>(get_le(p, pos, width)));
      pos += static_cast<std::size_t>(width);
    }
  }
  if (pos != p.size()) fail(ErrorKind::kParse, "trailing bytes after null-suppressed values");
  return out;
}

} // namespace

EncodedColumn heavy_encode(const ColumnVector& v) {
  const auto* c = heavy_compressor();
  if (!c) fail(ErrorKind::kNotFound, "no heavy compressor configured (build with SSBKIT_HEAVY_CODEC=zlib)");
  auto e = shell(v, Codec::kHeavy);
  e.payload = c->compress(raw_image(v));
  return e;
}

EncodedColumn encode(const ColumnVector& v, Codec codec) {
  switch (codec) {
    case Codec::kRle:
      return rle_encode(v);
    case Codec::kNullSuppress:
      return null_suppress_encode(v);
    case Codec::kHeavy:
      return heavy_encode(v);
  }
  fail(ErrorKind::kInvalidArgument, "unknown codec");
}

ColumnVector decode(const EncodedColumn& e) {
  std::vector<std::int64_t> values;
  switch (e.codec) {
    case Codec::kRle: {
      values.reserve(e.original_length);
      for (const auto& r : rle_runs(e)) values.insert(values.end(), r.length, r.value);
      break;
    }
    case Codec::kNullSuppress:
      values = null_suppress_decode(e);
      break;
    case Codec::kHeavy: {
      const auto* c = heavy_compressor();
      if (!c) fail(ErrorKind::kNotFound, "no heavy compressor configured");
      auto raw = c->decompress(e.payload, static_cast<std::size_t>(e.original_length) * 8);
      values.reserve(e.original_length);
      for (std::size_t pos = 0; pos < raw.size(); pos += 8) {
        values.push_back(static_cast<std::int64_t>(get_le(raw, pos, 8)));
      }
      break;
    }
  }
  return ColumnVector(std::move(values), e.type, e.scale);
}

std::vector<std::uint8_t> serialize(const EncodedColumn& e) {
  if (e.scale < 0 || e.scale > 15) fail(ErrorKind::kInvalidArgument, "decimal scale must fit in 4 bits");
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + e.payload.size());
  put_le(out, kMagic, 2);
  out.push_back(static_cast<std::uint8_t>(e.codec));
  out.push_back(static_cast<std::uint8_t>(static_cast<unsigned>(e.type) | (static_cast<unsigned>(e.scale) << 4)));
  put_le(out, e.original_length, 4);
  put_le(out, checked_length(e.payload.size()), 4);
  put_le(out, crc32(0L, e.payload.data(), static_cast<uInt>(e.payload.size())), 4);
  out.insert(out.end(), e.payload.begin(), e.payload.end());
  return out;
}

EncodedColumn deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) fail(ErrorKind::kParse, "encoded column shorter than its header");
  if (get_le(bytes, 0, 2) != kMagic) fail(ErrorKind::kParse, "bad magic in encoded column header");
  EncodedColumn e;
  auto codec = bytes[2];
  if (codec < 1 || codec > 3) fail(ErrorKind::kParse, fmt::format("unknown codec id {}", codec));
  e.codec = static_cast<Codec>(codec);
  auto type = bytes[3] & 0x0F;
  if (type > 2) fail(ErrorKind::kParse, fmt::format("unknown value type {}", type));
  e.type = static_cast<ValueType>(type);
  e.scale = bytes[3] >> 4;
  e.original_length = static_cast<std::uint32_t>(get_le(bytes, 4, 4));
  auto payload_len = get_le(bytes, 8, 4);
  auto crc = static_cast<std::uint32_t>(get_le(bytes, 12, 4));
  if (bytes.size() - kHeaderBytes != payload_len) {
    fail(ErrorKind::kParse, fmt::format("payload length {} does not match header {}", bytes.size() - kHeaderBytes,
                                        payload_len));
  }
  e.payload.assign(bytes.begin() + kHeaderBytes, bytes.end());
  if (crc32(0L, e.payload.data(), static_cast<uInt>(e.payload.size())) != crc) {
    fail(ErrorKind::kParse, "encoded column checksum mismatch");
  }
  if (e.codec == Codec::kRle) e.run_count = static_cast<std::uint32_t>(rle_runs(e).size());
  return e;
}

EntropyReport entropy(const ColumnVector& v, std::string column) {
  if (v.empty()) fail(ErrorKind::kInvalidArgument, "entropy of an empty column is undefined");
  std::unordered_map<std::int64_t, std::uint64_t> freq;
  for (auto x : v.values()) ++freq[x];
  EntropyReport r;
  r.column = std::move(column);
  r.distinct_count = freq.size();
  r.length = v.size();
  double n = static_cast<double>(v.size());
  double h = 0.0;
  for (const auto& [value, count] : freq) {
    double p = static_cast<double>(count) / n;
    h -= p * std::log2(p);
  }
  r.entropy_bits = std::max(0.0, h);
  return r;
}

std::int64_t sum_on_compressed(const EncodedColumn& e) {
  if (e.codec != Codec::kRle) {
    fail(ErrorKind::kInvalidArgument, fmt::format("sum_on_compressed needs an rle column, got {}", to_string(e.codec)));
  }
  if (e.payload.size() % kRunBytes != 0) fail(ErrorKind::kParse, "rle payload is not a whole number of runs");
  __int128 total = 0;
  for (std::size_t pos = 0; pos + kRunBytes <= e.payload.size(); pos += kRunBytes) {
    auto value = static_cast<std::int64_t>(get_le(e.payload, pos, 8));
    auto length = get_le(e.payload, pos + 8, 4);
    total += static_cast<__int128>(value) * static_cast<__int128>(length);
  }
  if (total > INT64_MAX || total < INT64_MIN) fail(ErrorKind::kOverflow, "sum exceeds the int64 range");
  return static_cast<std::int64_t>(total);
}

std::map<std::int64_t, std::int64_t> count_by_value_on_compressed(const EncodedColumn& e) {
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& r : rle_runs(e)) out[r.value] += r.length;
  return out;
}

double compression_ratio(const ColumnVector& v, const EncodedColumn& e) {
  if (e.payload.empty()) return 1.0;
  return static_cast<double>(v.raw_bytes()) / static_cast<double>(e.payload.size());
}

} // namespace ssbkit::compression

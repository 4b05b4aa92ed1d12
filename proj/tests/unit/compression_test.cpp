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


#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ssbkit/common/error.hpp"
#include "ssbkit/compression/benchmark.hpp"
#include "ssbkit/compression/codec.hpp"
#include "ssbkit/datagen/generator.hpp"
#include "ssbkit/schema/catalog.hpp"

namespace ssbkit::compression {
namespace {

using ssbkit::testing::shared_dataset;

std::vector<Codec> available_codecs() {
  std::vector<Codec> out{Codec::kRle, Codec::kNullSuppress};
  if (heavy_compressor() != nullptr) out.push_back(Codec::kHeavy);
  return out;
}

// Random columns of varying shape: runs, narrow and wide ranges, negatives.
std::vector<std::int64_t> random_column(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len_dist(0, 400);
  std::uniform_int_distribution<int> shape_dist(0, 4);
  auto n = len_dist(rng);
  auto shape = shape_dist(rng);
  std::vector<std::int64_t> v;
  v.reserve(n);
  while (static_cast<int>(v.size()) < n) {
    std::int64_t x = 0;
    switch (shape) {
      case 0: x = std::uniform_int_distribution<std::int64_t>(0, 3)(rng); break;
      case 1: x = std::uniform_int_distribution<std::int64_t>(-300, 300)(rng); break;
      case 2: x = std::uniform_int_distribution<std::int64_t>(-(1LL << 40), 1LL << 40)(rng); break;
      case 3: x = static_cast<std::int64_t>(rng()) >> std::uniform_int_distribution<int>(0, 62)(rng); break;
      default: x = std::uniform_int_distribution<std::int64_t>(19920101, 19981231)(rng); break;
    }
    auto repeat = std::uniform_int_distribution<int>(1, shape == 0 ? 1 : 12)(rng);
    for (int i = 0; i < repeat && static_cast<int>(v.size()) < n; ++i) v.push_back(x);
  }
  return v;
}

std::size_t naive_runs(const std::vector<std::int64_t>& v) {
  std::size_t runs = 0;
  for (std::size_t i = 0; i < v.size(); ++i) runs += i == 0 || v[i] != v[i - 1];
  return runs;
}

double naive_entropy(const std::vector<std::int64_t>& v) {
  std::map<std::int64_t, double> f;
  for (auto x : v) f[x] += 1;
  double h = 0;
  for (const auto& [k, c] : f) {
    double p = c / static_cast<double>(v.size());
    h -= p * std::log2(p);
  }
  return h;
}

TEST(Rle, Examples) {
  EXPECT_EQ(rle_runs(rle_encode(ColumnVector({5, 5, 5, 5}))), (std::vector<compression::Run>{{5, 4}}));
  EXPECT_EQ(rle_runs(rle_encode(ColumnVector({1, 2, 3}))), (std::vector<compression::Run>{{1, 1}, {2, 1}, {3, 1}}));
  auto empty = rle_encode(ColumnVector(std::vector<std::int64_t>{}));
  EXPECT_EQ(empty.run_count, 0u);
  EXPECT_EQ(sum_on_compressed(empty), 0);
  EXPECT_EQ(sum_on_compressed(rle_encode(ColumnVector({5, 5, 5, 5}))), 20);
}

TEST(Rle, ConstantColumnRatio) {
  std::vector<std::int64_t> v(10'000, 7);
  ColumnVector c(v);
  auto e = rle_encode(c);
  EXPECT_GE(compression_ratio(c, e), static_cast<double>(v.size()) / 2.0);
}

TEST(NullSuppression, Examples) {
  EXPECT_EQ(null_suppress_encode(ColumnVector({0, 0, 0, 0})).payload.size(), 1u);
  EXPECT_EQ(null_suppressed_width(0), 0);
  EXPECT_EQ(null_suppressed_width(1), 1);
  EXPECT_EQ(null_suppressed_width(255), 1);
  EXPECT_EQ(null_suppressed_width(256), 2);
  EXPECT_EQ(null_suppressed_width(-1), 8);
  // One tag byte, then 1 + 2 value bytes.
  EXPECT_EQ(null_suppress_encode(ColumnVector({1, 256})).payload.size(), 4u);
}

TEST(NullSuppression, ByteColumnCompressesBelowFortyPercent) {
  std::mt19937_64 rng(7);
  std::vector<std::int64_t> v(10'000);
  for (auto& x : v) x = std::uniform_int_distribution<std::int64_t>(0, 255)(rng);
  ColumnVector c(v);
  auto e = null_suppress_encode(c);
  // At most one byte per value plus one tag byte per group of four.
  EXPECT_LE(e.payload.size(), v.size() + (v.size() + 3) / 4);
  EXPECT_LT(static_cast<double>(e.payload.size()), 0.4 * static_cast<double>(c.raw_bytes()));
}

TEST(Codecs, RandomRoundTripsAndRunInvariants) {
  std::mt19937_64 rng(20260101);
  for (int iter = 0; iter < 1000; ++iter) {
    auto v = random_column(rng);
    ColumnVector c(v);
    for (auto codec : available_codecs()) {
      auto e = encode(c, codec);
      ASSERT_EQ(decode(e), c) << "codec " << to_string(codec) << " iteration " << iter;
      ASSERT_EQ(decode(deserialize(serialize(e))), c);
    }
    auto e = rle_encode(c);
    auto runs = rle_runs(e);
    ASSERT_EQ(runs.size(), naive_runs(v));
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      ASSERT_GE(runs[i].length, 1u);
      if (i > 0) {
        ASSERT_NE(runs[i].value, runs[i - 1].value);
      }
      total += runs[i].length;
    }
    ASSERT_EQ(total, v.size());
    ASSERT_LE(rle_encode(c.sorted()).run_count, e.run_count);
  }
}

TEST(Codecs, SumOnRunsEqualsDecodedSum) {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 1000; ++iter) {
    auto v = random_column(rng);
    for (auto& x : v) x %= (1LL << 40);
    auto e = rle_encode(ColumnVector(v));
    std::int64_t oracle = 0;
    for (auto x : v) oracle += x;
    ASSERT_EQ(sum_on_compressed(e), oracle);
    std::map<std::int64_t, std::int64_t> counts;
    for (auto x : v) ++counts[x];
    ASSERT_EQ(count_by_value_on_compressed(e), counts);
  }
}

TEST(Codecs, SumErrors) {
  EXPECT_THROW(sum_on_compressed(null_suppress_encode(ColumnVector({1, 2}))), Error);
  auto big = rle_encode(ColumnVector({std::numeric_limits<std::int64_t>::max(), std::numeric_limits<std::int64_t>::max()}));
  try {
    sum_on_compressed(big);
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOverflow);
  }
}

TEST(Codecs, ExtremeValues) {
  ColumnVector c({std::numeric_limits<std::int64_t>::min(), -1, 0, 1, std::numeric_limits<std::int64_t>::max()});
  for (auto codec : available_codecs()) EXPECT_EQ(decode(encode(c, codec)), c) << to_string(codec);
}

TEST(Codecs, TypeAndScaleSurvive) {
  ColumnVector c({100, 250, 250}, ValueType::kDecimal, 2);
  for (auto codec : available_codecs()) {
    auto back = decode(deserialize(serialize(encode(c, codec))));
    EXPECT_EQ(back.type(), ValueType::kDecimal);
    EXPECT_EQ(back.scale(), 2);
  }
  EXPECT_EQ(parse_codec("rle"), Codec::kRle);
  EXPECT_EQ(parse_codec(to_string(Codec::kNullSuppress)), Codec::kNullSuppress);
  EXPECT_THROW(parse_codec("lz4"), Error);
}

TEST(ColumnVector, SortednessIsDetectedAndVerified) {
  EXPECT_EQ(ColumnVector({1, 2, 2, 3}).sortedness(), Sortedness::kSorted);
  EXPECT_EQ(ColumnVector({3, 3, 1}).sortedness(), Sortedness::kRunsPresent);
  EXPECT_EQ(ColumnVector({3, 1, 2}).sortedness(), Sortedness::kUnsorted);
  EXPECT_THROW(ColumnVector({3, 1}, Sortedness::kSorted), Error);
  EXPECT_NO_THROW(ColumnVector({1, 3}, Sortedness::kSorted));
  EXPECT_EQ(ColumnVector({4, 1, 3}).raw_bytes(), 24u);
}

TEST(Container, HeaderLayout) {
  auto e = rle_encode(ColumnVector({9, 9, 9}));
  auto bytes = serialize(e);
  ASSERT_EQ(bytes.size(), kHeaderBytes + e.payload.size());
  EXPECT_EQ(bytes[0] | (bytes[1] << 8), kMagic);
  EXPECT_EQ(bytes[2], static_cast<std::uint8_t>(Codec::kRle));
  EXPECT_EQ(bytes[4] | (bytes[5] << 8) | (bytes[6] << 16) | (bytes[7] << 24), 3);
  EXPECT_EQ(static_cast<std::size_t>(bytes[8] | (bytes[9] << 8)), e.payload.size());
}

TEST(Container, CorruptionIsDetected) {
  auto bytes = serialize(null_suppress_encode(ColumnVector({1, 2, 3, 400, 5})));
  auto flipped = bytes;
  flipped.back() ^= 0x01;
  EXPECT_THROW(deserialize(flipped), Error);
  auto magic = bytes;
  magic[0] ^= 0xff;
  EXPECT_THROW(deserialize(magic), Error);
  EXPECT_THROW(deserialize(std::span(bytes).first(kHeaderBytes - 1)), Error);
  EXPECT_THROW(deserialize(std::span(bytes).first(bytes.size() - 1)), Error);
}

TEST(Entropy, ExamplesAndBounds) {
  EXPECT_DOUBLE_EQ(entropy(ColumnVector({4, 4, 4})).entropy_bits, 0.0);
  EXPECT_NEAR(entropy(ColumnVector({1, 2, 3, 4, 4, 3, 2, 1})).entropy_bits, 2.0, 1e-12);
  EXPECT_THROW(entropy(ColumnVector(std::vector<std::int64_t>{})), Error);

  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 500; ++iter) {
    auto v = random_column(rng);
    if (v.empty()) continue;
    auto r = entropy(ColumnVector(v));
    EXPECT_NEAR(r.entropy_bits, naive_entropy(v), 1e-9);
    EXPECT_GE(r.entropy_bits, 0.0);
    EXPECT_LE(r.entropy_bits, std::log2(static_cast<double>(r.distinct_count)) + 1e-9);
    EXPECT_EQ(r.length, v.size());
  }
}

TEST(Entropy, MaximalExactlyForEqualFrequencies) {
  for (int k = 2; k <= 12; ++k) {
    std::vector<std::int64_t> equal;
    for (int rep = 0; rep < 5; ++rep)
      for (int s = 0; s < k; ++s) equal.push_back(s);
    EXPECT_NEAR(entropy(ColumnVector(equal)).entropy_bits, std::log2(k), 1e-12);
    auto skewed = equal;
    skewed.push_back(0);
    EXPECT_LT(entropy(ColumnVector(skewed)).entropy_bits, std::log2(k) - 1e-6);
  }
}

TEST(Entropy, SortedRleRatioFallsAsEntropyRises) {
  constexpr int kLength = 1000;
  std::vector<std::pair<double, double>> family;  // (entropy, ratio)
  for (int ones = 0; ones <= kLength / 2; ones += 25) {
    std::vector<std::int64_t> v(kLength, 0);
    std::fill(v.begin(), v.begin() + ones, 1);
    ColumnVector c(v);
    auto sorted = c.sorted();
    family.emplace_back(entropy(c).entropy_bits, compression_ratio(sorted, rle_encode(sorted)));
  }
  std::sort(family.begin(), family.end());
  for (std::size_t i = 1; i < family.size(); ++i) EXPECT_LE(family[i].second, family[i - 1].second);
}

TEST(Dataset, SortedOrderDateRunsEqualDistinctValues) {
  const auto& ds = shared_dataset();
  auto catalog = schema::build_ssb_catalog();
  auto file = datagen::table_path(ds.dir.path(), datagen::Benchmark::kSsb, "LINEORDER");
  auto dates = load_column(file, catalog.table("LINEORDER"), "LO_ORDERDATE");
  std::set<std::int64_t> distinct(dates.values().begin(), dates.values().end());
  EXPECT_EQ(rle_encode(dates.sorted()).run_count, distinct.size());
  EXPECT_GE(compression_ratio(dates.sorted(), rle_encode(dates.sorted())),
            compression_ratio(dates, rle_encode(dates)));

  auto discount = load_column(file, catalog.table("LINEORDER"), "LO_DISCOUNT");
  EXPECT_NEAR(entropy(discount).entropy_bits, std::log2(11.0), 0.1);
  EXPECT_THROW(load_column(file, catalog.table("LINEORDER"), "LO_SHIPMODE"), Error);
}

TEST(Benchmark, TableShapeAndInvariants) {
  const auto& ds = shared_dataset();
  CompressionOptions opts;
  opts.timing_runs = 1;
  auto rows = compression_benchmark(ds.dir.path(), opts);
  std::size_t per_variant = 1 + available_codecs().size();
  ASSERT_EQ(rows.size(), opts.columns.size() * 2 * per_variant);
  std::map<std::string, std::set<std::int64_t>> sums;
  std::map<std::pair<std::string, bool>, double> rle_ratio;
  for (const auto& r : rows) {
    sums[r.column].insert(r.sum);
    EXPECT_GT(r.ratio, 0.0);
    EXPECT_GE(r.encode_ms, 0.0);
    EXPECT_GE(r.agg_ms, 0.0);
    if (r.codec == "rle") rle_ratio[{r.column, r.sorted}] = r.ratio;
    if (r.codec == "plain") {
      EXPECT_DOUBLE_EQ(r.ratio, 1.0);
    }
  }
  for (const auto& [col, s] : sums) EXPECT_EQ(s.size(), 1u) << col;
  for (const auto& col : opts.columns) {
    EXPECT_GE(rle_ratio[std::pair(col, true)], rle_ratio[std::pair(col, false)]) << col;
  }

  std::ostringstream csv;
  write_csv(csv, rows);
  auto text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "column,codec,sorted,ratio,encode_ms,agg_ms,agg_decoded_ms");
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), rows.size() + 1);
}

TEST(Benchmark, MissingDatasetFails) {
  ssbkit::testing::TempDir dir("nodata");
  EXPECT_THROW(compression_benchmark(dir.path()), Error);
}

} // namespace
} // namespace ssbkit::compression

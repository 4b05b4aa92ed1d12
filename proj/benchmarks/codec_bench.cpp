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
#include <random>

#include <benchmark/benchmark.h>

#include "ssbkit/compression/codec.hpp"

namespace {

using namespace ssbkit::compression;

// Date-like keys over seven years, optionally sorted.
ColumnVector order_dates(std::int64_t n, bool sorted) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::int64_t> day(0, 2405);
  std::vector<std::int64_t> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = 19920101 + day(rng);
  if (sorted) std::sort(v.begin(), v.end());
  return ColumnVector(std::move(v), ValueType::kDate);
}

void BM_RleEncode(benchmark::State& state) {
  auto c = order_dates(state.range(0), state.range(1) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(rle_encode(c));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * c.raw_bytes()));
}
BENCHMARK(BM_RleEncode)->Args({1 << 16, 1})->Args({1 << 16, 0});

void BM_NullSuppressEncode(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::vector<std::int64_t> v(static_cast<std::size_t>(state.range(0)));
  for (auto& x : v) x = std::uniform_int_distribution<std::int64_t>(0, 10)(rng);
  ColumnVector c(std::move(v));
  for (auto _ : state) benchmark::DoNotOptimize(null_suppress_encode(c));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * c.raw_bytes()));
}
BENCHMARK(BM_NullSuppressEncode)->Arg(1 << 16);

void BM_SumOnRuns(benchmark::State& state) {
  auto e = rle_encode(order_dates(state.range(0), true));
  for (auto _ : state) benchmark::DoNotOptimize(sum_on_compressed(e));
}
BENCHMARK(BM_SumOnRuns)->Arg(1 << 16);

void BM_SumAfterDecode(benchmark::State& state) {
  auto e = rle_encode(order_dates(state.range(0), true));
  for (auto _ : state) {
    std::int64_t s = 0;
    for (auto x : decode(e).values()) s += x;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_SumAfterDecode)->Arg(1 << 16);

void BM_Entropy(benchmark::State& state) {
  auto c = order_dates(state.range(0), false);
  for (auto _ : state) benchmark::DoNotOptimize(entropy(c));
}
BENCHMARK(BM_Entropy)->Arg(1 << 16);

} // namespace

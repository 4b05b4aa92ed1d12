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
#include <string_view>

namespace ssbkit {

/// Name of the pinned generator algorithm. Recorded in every manifest so
/// that files can be reproduced by any implementation of the same scheme.
inline constexpr std::string_view kRngAlgorithm = "splitmix64-ctr/v1";

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over a tag; used to derive stable substream keys from names.
constexpr std::uint64_t tag_hash(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Counter-based substream. Every draw is a pure function of
/// (key, position), so any row can be generated without replaying the
/// rows before it and substreams never interfere with each other.
class Substream {
 public:
  constexpr Substream() = default;
  constexpr explicit Substream(std::uint64_t key) : key_(key), position_(key) {}

  /// Derives an independent child stream, e.g. seed -> table -> column.
  Substream child(std::string_view tag) const {
    return Substream(splitmix64(key_ ^ tag_hash(tag)));
  }
  Substream child(std::uint64_t index) const {
    return Substream(splitmix64(key_ + splitmix64(index ^ 0x5bd1e9955bd1e995ULL)));
  }

  /// Positions the stream at entity `index` (row, order, ...).
  Substream& at(std::uint64_t index) {
    position_ = splitmix64(key_ ^ (index * 0xd1342543de82ef95ULL));
    counter_ = 0;
    return *this;
  }

  std::uint64_t next_u64() { return splitmix64(position_ + counter_++ * 0x632be59bd9b4e019ULL); }

  /// Uniform integer in [lo, hi], unbiased (Lemire's multiply-and-reject).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t position_ = 0;
  std::uint64_t counter_ = 0;
};

} // namespace ssbkit

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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ssbkit {

/// Exact positive rational used for scale factors. "0.01" parses to 1/100 so
/// cardinalities such as ceil(6'000'000 * SF) never see float rounding.
class ScaleFactor {
 public:
  ScaleFactor() = default;
  ScaleFactor(std::int64_t numerator, std::int64_t denominator);

  /// Accepts integers ("4"), decimals ("0.01") and fractions ("1/3").
  static ScaleFactor parse(std::string_view text);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  /// ceil(base * SF)
  std::int64_t scale_ceil(std::int64_t base) const;
  /// floor(log2 SF); requires SF >= 1.
  int floor_log2() const;
  bool at_least_one() const { return num_ >= den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  ScaleFactor operator*(std::int64_t k) const;

  /// Canonical decimal-ish rendering ("0.01", "4", "1/3").
  std::string to_string() const;

  friend bool operator==(const ScaleFactor& a, const ScaleFactor& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
};

} // namespace ssbkit

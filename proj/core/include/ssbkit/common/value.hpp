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
#include <string>
#include <string_view>
#include <variant>

#include "ssbkit/common/date.hpp"

namespace ssbkit {

/// Fixed-point decimal: value = units / 10^scale.
struct Decimal {
  std::int64_t units = 0;
  int scale = 2;

  static Decimal parse(std::string_view text, int scale);
  std::string to_string() const;
  /// Rescales to `target` digits, rounding half away from zero.
  Decimal rescaled(int target) const;
  double to_double() const;
};

bool operator==(const Decimal& a, const Decimal& b);
std::partial_ordering operator<=>(const Decimal& a, const Decimal& b);

struct Null {
  bool operator==(const Null&) const = default;
};

/// One cell of a generated or loaded row.
using Value = std::variant<Null, std::int64_t, Decimal, Date, std::string>;

/// dbgen-style text rendering: decimals keep their scale, dates are
/// YYYY-MM-DD, nulls are empty.
std::string render(const Value& value);

bool is_numeric(const Value& value);

} // namespace ssbkit

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

#include "ssbkit/common/value.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"

namespace ssbkit {

namespace {

constexpr std::int64_t kPow10[] = {1,
                                   10,
                                   100,
                                   1000,
                                   10000,
                                   100000,
                                   1000000,
                                   10000000,
                                   100000000,
                                   1000000000,
                                   10000000000,
                                   100000000000,
                                   1000000000000};

std::int64_t pow10(int n) {
  if (n < 0 || n > 12) fail(ErrorKind::kInvalidArgument, fmt::format("unsupported scale {}", n));
  return kPow10[n];
}

} // namespace

Decimal Decimal::parse(std::string_view text, int scale) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail(ErrorKind::kParse, fmt::format("invalid decimal '{}'", text));
  __int128 units = 0;
  int frac_digits = -1;
  for (char c : s) {
    if (c == '.') {
      if (frac_digits >= 0) fail(ErrorKind::kParse, fmt::format("invalid decimal '{}'", text));
      frac_digits = 0;
      continue;
    }
    if (c < '0' || c > '9') fail(ErrorKind::kParse, fmt::format("invalid decimal '{}'", text));
    if (frac_digits >= scale) {
      fail(ErrorKind::kParse, fmt::format("decimal '{}' exceeds scale {}", text, scale));
    }
    units = units * 10 + (c - '0');
    if (frac_digits >= 0) ++frac_digits;
    if (units > static_cast<__int128>(INT64_MAX)) {
      fail(ErrorKind::kOverflow, fmt::format("decimal '{}' out of range", text));
    }
  }
  int have = frac_digits < 0 ? 0 : frac_digits;
  units *= pow10(scale - have);
  if (units > static_cast<__int128>(INT64_MAX)) {
    fail(ErrorKind::kOverflow, fmt::format("decimal '{}' out of range", text));
  }
  auto v = static_cast<std::int64_t>(units);
  return Decimal{negative ? -v : v, scale};
}

std::string Decimal::to_string() const {
  if (scale == 0) return fmt::format("{}", units);
  auto p = pow10(scale);
  std::uint64_t mag = units < 0 ? static_cast<std::uint64_t>(-(units + 1)) + 1
                                : static_cast<std::uint64_t>(units);
  return fmt::format("{}{}.{:0{}}", units < 0 ? "-" : "", mag / p, mag % p, scale);
}

Decimal Decimal::rescaled(int target) const {
  if (target == scale) return *this;
  if (target > scale) return Decimal{units * pow10(target - scale), target};
  auto p = pow10(scale - target);
  auto q = units / p;
  auto r = units % p;
  if (2 * std::llabs(r) >= p) q += units < 0 ? -1 : 1;
  return Decimal{q, target};
}

double Decimal::to_double() const {
  return static_cast<double>(units) / static_cast<double>(pow10(scale));
}

bool operator==(const Decimal& a, const Decimal& b) { return (a <=> b) == 0; }

std::partial_ordering operator<=>(const Decimal& a, const Decimal& b) {
  int s = std::max(a.scale, b.scale);
  __int128 x = static_cast<__int128>(a.units) * pow10(s - a.scale);
  __int128 y = static_cast<__int128>(b.units) * pow10(s - b.scale);
  return x <=> y;
}

std::string render(const Value& value) {
  struct Visitor {
    std::string operator()(const Null&) const { return {}; }
    std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
    std::string operator()(const Decimal& v) const { return v.to_string(); }
    std::string operator()(const Date& v) const { return v.to_string(); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, value);
}

bool is_numeric(const Value& value) {
  return std::holds_alternative<std::int64_t>(value) || std::holds_alternative<Decimal>(value);
}

} // namespace ssbkit

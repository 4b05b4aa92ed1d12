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

#include "ssbkit/common/scale_factor.hpp"

#include <numeric>

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"

namespace ssbkit {

namespace {

std::int64_t parse_uint(std::string_view digits, std::string_view whole) {
  if (digits.empty() || digits.size() > 17) {
    fail(ErrorKind::kInvalidArgument, fmt::format("invalid scale factor '{}'", whole));
  }
  std::int64_t v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') {
      fail(ErrorKind::kInvalidArgument, fmt::format("invalid scale factor '{}'", whole));
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

} // namespace

ScaleFactor::ScaleFactor(std::int64_t numerator, std::int64_t denominator) {
  if (numerator <= 0 || denominator <= 0) {
    fail(ErrorKind::kInvalidArgument,
         fmt::format("scale factor must be positive, got {}/{}", numerator, denominator));
  }
  auto g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

ScaleFactor ScaleFactor::parse(std::string_view raw) {
  auto text = trim(raw);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return ScaleFactor(parse_uint(text.substr(0, slash), raw),
                       parse_uint(text.substr(slash + 1), raw));
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    return ScaleFactor(parse_uint(text, raw), 1);
  }
  auto int_part = text.substr(0, dot);
  auto frac_part = text.substr(dot + 1);
  if (frac_part.empty() || frac_part.size() > 12) {
    fail(ErrorKind::kInvalidArgument, fmt::format("invalid scale factor '{}'", raw));
  }
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  std::int64_t whole = int_part.empty() ? 0 : parse_uint(int_part, raw);
  return ScaleFactor(whole * den + parse_uint(frac_part, raw), den);
}

std::int64_t ScaleFactor::scale_ceil(std::int64_t base) const {
  __int128 prod = static_cast<__int128>(base) * num_;
  __int128 q = prod / den_;
  if (prod % den_ != 0) ++q;
  return static_cast<std::int64_t>(q);
}

int ScaleFactor::floor_log2() const {
  if (!at_least_one()) {
    fail(ErrorKind::kInvalidArgument, "floor_log2 requires SF >= 1");
  }
  int k = 0;
  __int128 pow = den_;
  while (pow * 2 <= num_) {
    pow *= 2;
    ++k;
  }
  return k;
}

ScaleFactor ScaleFactor::operator*(std::int64_t k) const { return ScaleFactor(num_ * k, den_); }

std::string ScaleFactor::to_string() const {
  if (den_ == 1) return fmt::format("{}", num_);
  // Render as a terminating decimal when the denominator is 2^a * 5^b.
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return fmt::format("{}/{}", num_, den_);
  int digits = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  std::int64_t scaled = num_ * (scale / den_);
  return fmt::format("{}.{:0{}}", scaled / scale, scaled % scale, digits);
}

} // namespace ssbkit

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

/// Calendar date stored as days since 1970-01-01 (proleptic Gregorian).
struct Date {
  std::int32_t days = 0;

  static Date from_ymd(int year, unsigned month, unsigned day);
  /// Parses `YYYY-MM-DD`; throws Error(kParse) otherwise.
  static Date parse(std::string_view text);

  int year() const;
  unsigned month() const;
  unsigned day() const;
  /// 1 = Monday ... 7 = Sunday.
  unsigned iso_weekday() const;
  /// 1-based position inside the year.
  unsigned day_of_year() const;
  bool is_last_day_of_month() const;

  /// yyyymmdd as an integer, e.g. 19940105.
  std::int64_t as_key() const;
  static Date from_key(std::int64_t key);

  std::string to_string() const;

  Date operator+(std::int32_t delta) const { return Date{days + delta}; }
  std::int32_t operator-(Date other) const { return days - other.days; }
  auto operator<=>(const Date&) const = default;
};

bool is_leap_year(int year);

} // namespace ssbkit

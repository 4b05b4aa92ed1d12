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

#include "ssbkit/common/date.hpp"

#include <chrono>

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"

namespace ssbkit {

namespace chr = std::chrono;

namespace {

chr::year_month_day to_ymd(Date d) {
  return chr::year_month_day{chr::sys_days{chr::days{d.days}}};
}

int parse_digits(std::string_view text, std::size_t pos, std::size_t count) {
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') {
      fail(ErrorKind::kParse, fmt::format("invalid date '{}'", text));
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

} // namespace

bool is_leap_year(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

Date Date::from_ymd(int year, unsigned month, unsigned day) {
  chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  if (!ymd.ok()) {
    fail(ErrorKind::kInvalidArgument,
         fmt::format("invalid calendar date {:04}-{:02}-{:02}", year, month, day));
  }
  return Date{static_cast<std::int32_t>(chr::sys_days{ymd}.time_since_epoch().count())};
}

Date Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    fail(ErrorKind::kParse, fmt::format("invalid date '{}', expected YYYY-MM-DD", text));
  }
  int y = parse_digits(text, 0, 4);
  int m = parse_digits(text, 5, 2);
  int d = parse_digits(text, 8, 2);
  chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                          chr::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    fail(ErrorKind::kParse, fmt::format("invalid date '{}'", text));
  }
  return from_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

int Date::year() const { return static_cast<int>(to_ymd(*this).year()); }
unsigned Date::month() const { return static_cast<unsigned>(to_ymd(*this).month()); }
unsigned Date::day() const { return static_cast<unsigned>(to_ymd(*this).day()); }

unsigned Date::iso_weekday() const {
  return chr::weekday{chr::sys_days{chr::days{days}}}.iso_encoding();
}

unsigned Date::day_of_year() const {
  return static_cast<unsigned>(days - from_ymd(year(), 1, 1).days) + 1;
}

bool Date::is_last_day_of_month() const { return Date{days + 1}.day() == 1; }

std::int64_t Date::as_key() const {
  auto ymd = to_ymd(*this);
  return static_cast<std::int64_t>(static_cast<int>(ymd.year())) * 10000 +
         static_cast<unsigned>(ymd.month()) * 100 + static_cast<unsigned>(ymd.day());
}

Date Date::from_key(std::int64_t key) {
  return from_ymd(static_cast<int>(key / 10000), static_cast<unsigned>(key / 100 % 100),
                  static_cast<unsigned>(key % 100));
}

std::string Date::to_string() const {
  auto ymd = to_ymd(*this);
  return fmt::format("{:04}-{:02}-{:02}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

} // namespace ssbkit

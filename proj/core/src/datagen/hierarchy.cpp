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

#include "ssbkit/datagen/hierarchy.hpp"

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"

namespace ssbkit::datagen {

const std::vector<Nation>& nations() {
  static const std::vector<Nation> kNations = {
      {"ALGERIA", "AFRICA", 0},        {"ARGENTINA", "AMERICA", 1},
      {"BRAZIL", "AMERICA", 2},        {"CANADA", "AMERICA", 3},
      {"EGYPT", "MIDDLE EAST", 4},     {"ETHIOPIA", "AFRICA", 5},
      {"FRANCE", "EUROPE", 6},         {"GERMANY", "EUROPE", 7},
      {"INDIA", "ASIA", 8},            {"INDONESIA", "ASIA", 9},
      {"IRAN", "MIDDLE EAST", 10},     {"IRAQ", "MIDDLE EAST", 11},
      {"JAPAN", "ASIA", 12},           {"JORDAN", "MIDDLE EAST", 13},
      {"KENYA", "AFRICA", 14},         {"MOROCCO", "AFRICA", 15},
      {"MOZAMBIQUE", "AFRICA", 16},    {"PERU", "AMERICA", 17},
      {"CHINA", "ASIA", 18},           {"ROMANIA", "EUROPE", 19},
      {"SAUDI ARABIA", "MIDDLE EAST", 20}, {"VIETNAM", "ASIA", 21},
      {"RUSSIA", "EUROPE", 22},        {"UNITED KINGDOM", "EUROPE", 23},
      {"UNITED STATES", "AMERICA", 24},
  };
  return kNations;
}

const std::vector<std::string>& regions() {
  static const std::vector<std::string> kRegions = {"AFRICA", "AMERICA", "ASIA", "EUROPE",
                                                    "MIDDLE EAST"};
  return kRegions;
}

int HierarchySpec::leaf_count() const {
  int n = 1;
  for (const auto& l : levels) n *= l.fan_out;
  return n;
}

HierarchySpec GeographyConfig::spec() const {
  return {{{"region", 5}, {"nation", 5}, {"city", cities_per_nation}},
          "city = first 9 chars of nation + city digit"};
}

HierarchySpec PartHierarchyConfig::spec() const {
  return {{{"mfgr", manufacturers}, {"category", categories_per_mfgr}, {"brand", brands_per_category}},
          "MFGR#<m>, MFGR#<m><c>, MFGR#<m><c><bb>"};
}

std::string city_name(std::string_view nation, int city_index) {
  return fmt::format("{:<9.9}{}", nation, city_index);
}

GeoMember geography_member(const GeographyConfig& config, int index) {
  if (config.cities_per_nation < 1 || config.cities_per_nation > 10) {
    fail(ErrorKind::kInvalidArgument, "cities_per_nation must be in [1, 10]");
  }
  int i = index % config.member_count();
  int region = i % 5;
  int nation_in_region = (i / 5) % 5;
  int city = (i / 25) % config.cities_per_nation;
  const auto& region_name = regions()[static_cast<std::size_t>(region)];
  int seen = 0;
  for (const auto& n : nations()) {
    if (n.region != region_name) continue;
    if (seen++ == nation_in_region) {
      return {city_name(n.name, city), n.name, n.region, n.key};
    }
  }
  fail(ErrorKind::kInvalidArgument, "geography member out of range");
}

PartMember part_member(const PartHierarchyConfig& config, int index) {
  if (config.manufacturers < 1 || config.manufacturers > 9 || config.categories_per_mfgr < 1 ||
      config.categories_per_mfgr > 9 || config.brands_per_category < 1 ||
      config.brands_per_category > 99) {
    fail(ErrorKind::kInvalidArgument, "part hierarchy fan-outs out of range");
  }
  int i = index % config.member_count();
  int m = i % config.manufacturers + 1;
  int c = (i / config.manufacturers) % config.categories_per_mfgr + 1;
  int b = (i / (config.manufacturers * config.categories_per_mfgr)) % config.brands_per_category + 1;
  return {fmt::format("MFGR#{}", m), fmt::format("MFGR#{}{}", m, c), fmt::format("MFGR#{}{}{:02}", m, c, b)};
}

nlohmann::json to_json(const GeographyConfig& c) {
  return {{"cities_per_nation", c.cities_per_nation}};
}

nlohmann::json to_json(const PartHierarchyConfig& c) {
  return {{"manufacturers", c.manufacturers},
          {"categories_per_mfgr", c.categories_per_mfgr},
          {"brands_per_category", c.brands_per_category}};
}

} // namespace ssbkit::datagen

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

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace ssbkit::datagen {

struct HierarchyLevel {
  std::string name;
  int fan_out = 1;
};

/// Ordered levels from the root down. `encoding` documents how a member
/// label is composed from its ancestors.
struct HierarchySpec {
  std::vector<HierarchyLevel> levels;
  std::string encoding;

  /// Number of leaf members.
  int leaf_count() const;
};

struct Nation {
  std::string name;
  std::string region;
  int key = 0;
};

/// The 25 nations and 5 regions shared by SSB and TPC-H, ordered by their
/// TPC-H nation key.
const std::vector<Nation>& nations();
const std::vector<std::string>& regions();

/// region -> nation -> city. Region and nation fan-outs are fixed by the
/// name lists; the city fan-out is configurable.
struct GeographyConfig {
  int cities_per_nation = 10;

  HierarchySpec spec() const;
  int member_count() const { return 25 * cities_per_nation; }
};

struct GeoMember {
  std::string city;
  std::string nation;
  std::string region;
  int nation_key = 0;
};

/// Members are numbered so that consecutive indices cycle through regions
/// first, then nations, then cities. Assigning indices 0..n-1 to rows keeps
/// every level of the hierarchy as balanced as n allows.
GeoMember geography_member(const GeographyConfig& config, int index);

/// First nine characters of the nation padded with spaces, plus a digit.
std::string city_name(std::string_view nation, int city_index);

/// manufacturer -> category -> brand.
struct PartHierarchyConfig {
  int manufacturers = 5;
  int categories_per_mfgr = 5;
  int brands_per_category = 40;

  HierarchySpec spec() const;
  int member_count() const { return manufacturers * categories_per_mfgr * brands_per_category; }
};

struct PartMember {
  std::string mfgr;      // MFGR#m
  std::string category;  // MFGR#mc
  std::string brand;     // MFGR#mcbb
};

PartMember part_member(const PartHierarchyConfig& config, int index);

nlohmann::json to_json(const GeographyConfig& c);
nlohmann::json to_json(const PartHierarchyConfig& c);

} // namespace ssbkit::datagen

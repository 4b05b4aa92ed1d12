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

#include "ssbkit/datagen/text_pools.hpp"

namespace ssbkit::datagen {

const std::vector<std::string>& market_segments() {
  static const std::vector<std::string> k = {"AUTOMOBILE", "BUILDING", "FURNITURE", "MACHINERY",
                                             "HOUSEHOLD"};
  return k;
}

const std::vector<std::string>& order_priorities() {
  static const std::vector<std::string> k = {"1-URGENT", "2-HIGH", "3-MEDIUM", "4-NOT SPECIFIED",
                                             "5-LOW"};
  return k;
}

const std::vector<std::string>& ship_modes() {
  static const std::vector<std::string> k = {"REG AIR", "AIR", "RAIL", "SHIP", "TRUCK", "MAIL", "FOB"};
  return k;
}

const std::vector<std::string>& ship_instructions() {
  static const std::vector<std::string> k = {"DELIVER IN PERSON", "COLLECT COD", "NONE",
                                             "TAKE BACK RETURN"};
  return k;
}

const std::vector<std::string>& colors() {
  static const std::vector<std::string> k = {
      "almond",    "antique",  "aquamarine", "azure",     "beige",     "bisque",   "black",
      "blanched",  "blue",     "blush",      "brown",     "burlywood", "burnished", "chartreuse",
      "chiffon",   "chocolate", "coral",     "cornflower", "cornsilk", "cream",    "cyan",
      "dark",      "deep",     "dim",        "dodger",    "drab",      "firebrick", "floral",
      "forest",    "frosted",  "gainsboro",  "ghost",     "goldenrod", "green",    "grey",
      "honeydew",  "hot",      "indian",     "ivory",     "khaki",     "lace",     "lavender",
      "lawn",      "lemon",    "light",      "lime",      "linen",     "magenta",  "maroon",
      "medium",    "metallic", "midnight",   "mint",      "misty",     "moccasin", "navajo",
      "navy",      "olive",    "orange",     "orchid",    "pale",      "papaya",   "peach",
      "peru",      "pink",     "plum",       "powder",    "puff",      "purple",   "red",
      "rose",      "rosy",     "royal",      "saddle",    "salmon",    "sandy",    "seashell",
      "sienna",    "sky",      "slate",      "smoke",     "snow",      "spring",   "steel",
      "tan",       "thistle",  "tomato",     "turquoise", "violet",    "wheat",    "white",
      "yellow"};
  return k;
}

const std::vector<std::string>& type_syllables1() {
  static const std::vector<std::string> k = {"STANDARD", "SMALL", "MEDIUM", "LARGE", "ECONOMY", "PROMO"};
  return k;
}

const std::vector<std::string>& type_syllables2() {
  static const std::vector<std::string> k = {"ANODIZED", "BURNISHED", "PLATED", "POLISHED", "BRUSHED"};
  return k;
}

const std::vector<std::string>& type_syllables3() {
  static const std::vector<std::string> k = {"TIN", "NICKEL", "BRASS", "STEEL", "COPPER"};
  return k;
}

const std::vector<std::string>& container_syllables1() {
  static const std::vector<std::string> k = {"SM", "LG", "MED", "JUMBO", "WRAP"};
  return k;
}

const std::vector<std::string>& container_syllables2() {
  static const std::vector<std::string> k = {"CASE", "BOX", "BAG", "JAR", "PKG", "PACK", "CAN", "DRUM"};
  return k;
}

const std::vector<std::string>& comment_words() {
  static const std::vector<std::string> k = {
      "furiously", "sly",      "careful",  "blithely", "quickly",  "fluffily", "slyly",
      "carefully", "ironic",   "final",    "regular",  "express",  "special",  "pending",
      "bold",      "even",     "silent",   "unusual",  "packages", "requests", "accounts",
      "deposits",  "foxes",    "ideas",    "theodolites", "pinto", "beans",    "instructions",
      "dependencies", "excuses", "platelets", "asymptotes", "courts", "dolphins", "sleep",
      "wake",      "are",      "haggle",   "nag",      "use",      "boost",    "affix",
      "detect",    "integrate", "cajole",  "among",    "about",    "above",    "according"};
  return k;
}

} // namespace ssbkit::datagen

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
#include <vector>

namespace ssbkit::datagen {

// Value pools for categorical columns. Order matters: generated values are
// indices into these lists.

const std::vector<std::string>& market_segments();
const std::vector<std::string>& order_priorities();
const std::vector<std::string>& ship_modes();
const std::vector<std::string>& ship_instructions();
const std::vector<std::string>& colors();
const std::vector<std::string>& type_syllables1();
const std::vector<std::string>& type_syllables2();
const std::vector<std::string>& type_syllables3();
const std::vector<std::string>& container_syllables1();
const std::vector<std::string>& container_syllables2();
const std::vector<std::string>& comment_words();

} // namespace ssbkit::datagen

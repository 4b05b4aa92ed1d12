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

#include <string_view>
#include <utility>
#include <vector>

namespace ssbkit::workload::detail {

/// Query template files compiled into the library, keyed by path relative
/// to the queries directory ("ssb/q1.1.sql", "mapping.json", ...).
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_files();

std::string_view embedded_file(std::string_view path);

} // namespace ssbkit::workload::detail

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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <unistd.h>

#include "ssbkit/common/scale_factor.hpp"
#include "ssbkit/datagen/dataset.hpp"
#include "ssbkit/datagen/spec.hpp"

namespace ssbkit::testing {

class TempDir {
 public:
  explicit TempDir(std::string_view tag = "ssbkit") {
    std::string pattern = (std::filesystem::temp_directory_path() / (std::string(tag) + "-XXXXXX")).string();
    if (::mkdtemp(pattern.data()) == nullptr) std::abort();
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

struct Dataset {
  TempDir dir{"ssbkit-data"};
  datagen::GenSpec spec;
  datagen::DatasetManifest manifest;
};

// Generated once per process and reused by every test that needs it.
inline const Dataset& shared_dataset(std::string_view sf = "0.01", std::uint64_t seed = 42) {
  static std::map<std::string, std::unique_ptr<Dataset>> cache;
  std::string key = std::string(sf) + "/" + std::to_string(seed);
  auto& slot = cache[key];
  if (!slot) {
    slot = std::make_unique<Dataset>();
    slot->spec = datagen::make_spec(ScaleFactor::parse(sf), seed);
    slot->spec.output_dir = slot->dir.path();
    slot->manifest = datagen::generate_dataset(slot->spec);
  }
  return *slot;
}

inline std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Plain '|' splitter used as an oracle independent of TblReader.
inline std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& file) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(file);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '|') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

} // namespace ssbkit::testing

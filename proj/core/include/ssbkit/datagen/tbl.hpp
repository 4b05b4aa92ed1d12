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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "ssbkit/common/hash.hpp"
#include "ssbkit/datagen/generator.hpp"
#include "ssbkit/schema/catalog.hpp"

namespace ssbkit::datagen {

/// Appends one dbgen-style line: fields joined by `|`, a trailing `|`,
/// then `\n`.
void append_tbl_line(std::string& out, const Row& row);

struct TblWriteResult {
  std::int64_t rows = 0;
  std::string sha256;
};

/// Drains `stream` into `path`. I/O failures raise Error(kIo) naming the
/// row index at which writing failed.
TblWriteResult write_tbl(RowStream& stream, const std::filesystem::path& path);

/// Parses .tbl lines according to the stored columns of a table.
class TblReader {
 public:
  TblReader(const schema::TableDef& table, const std::filesystem::path& path);

  /// Next row, or nullopt at end of file. Malformed lines raise
  /// Error(kParse) with file and 1-based line number.
  std::optional<Row> next();
  std::int64_t line_number() const { return line_; }

 private:
  std::vector<const schema::ColumnDef*> columns_;
  std::filesystem::path path_;
  std::ifstream in_;
  std::string buffer_;
  std::int64_t line_ = 0;
};

/// Parses one field of a stored column.
Value parse_field(const schema::ColumnDef& column, std::string_view text);

/// Line count (number of `\n`) of a file.
std::int64_t count_lines(const std::filesystem::path& path);

} // namespace ssbkit::datagen

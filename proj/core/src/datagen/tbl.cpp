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

#include "ssbkit/datagen/tbl.hpp"

#include <charconv>

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"

namespace ssbkit::datagen {

void append_tbl_line(std::string& out, const Row& row) {
  for (const auto& v : row) {
    out += render(v);
    out += '|';
  }
  out += '\n';
}

TblWriteResult write_tbl(RowStream& stream, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, fmt::format("cannot open '{}' for writing", path.string()));
  TblWriteResult result;
  Sha256 hash;
  std::string buffer;
  stream.seek_chunk(0);
  while (auto chunk = stream.next_chunk()) {
    buffer.clear();
    for (const auto& row : *chunk) append_tbl_line(buffer, row);
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (!out) {
      fail(ErrorKind::kIo, fmt::format("write to '{}' failed at row {}", path.string(), result.rows));
    }
    hash.update(buffer);
    result.rows += static_cast<std::int64_t>(chunk->size());
  }
  out.close();
  if (!out) fail(ErrorKind::kIo, fmt::format("closing '{}' failed after row {}", path.string(), result.rows));
  result.sha256 = hash.hex_digest();
  return result;
}

Value parse_field(const schema::ColumnDef& column, std::string_view text) {
  using schema::LogicalKind;
  switch (column.type.kind) {
    case LogicalKind::kInteger: {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(ErrorKind::kParse, fmt::format("column {}: invalid integer '{}'", column.name, text));
      }
      return v;
    }
    case LogicalKind::kDecimal:
      return Decimal::parse(text, column.type.scale);
    case LogicalKind::kCalendarDate:
      return Date::parse(text);
    case LogicalKind::kFixedText:
    case LogicalKind::kVarText:
      return std::string(text);
  }
  return Null{};
}

TblReader::TblReader(const schema::TableDef& table, const std::filesystem::path& path)
    : columns_(table.stored_columns()), path_(path), in_(path, std::ios::binary) {
  if (!in_) fail(ErrorKind::kIo, fmt::format("cannot open '{}'", path.string()));
}

std::optional<Row> TblReader::next() {
  if (!std::getline(in_, buffer_)) return std::nullopt;
  ++line_;
  std::string_view line(buffer_);
  if (line.empty() || line.back() != '|') {
    fail(ErrorKind::kParse, fmt::format("{}:{}: row is not terminated by '|'", path_.string(), line_));
  }
  Row row;
  row.reserve(columns_.size());
  std::size_t start = 0;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    auto pos = line.find('|', start);
    if (pos == std::string_view::npos) {
      fail(ErrorKind::kParse, fmt::format("{}:{}: expected {} fields, got {}", path_.string(), line_,
                                          columns_.size(), i));
    }
    try {
      row.push_back(parse_field(*columns_[i], line.substr(start, pos - start)));
    } catch (const Error& e) {
      fail(ErrorKind::kParse, fmt::format("{}:{}: {}", path_.string(), line_, e.what()));
    }
    start = pos + 1;
  }
  if (start != line.size()) {
    fail(ErrorKind::kParse,
         fmt::format("{}:{}: more than {} fields", path_.string(), line_, columns_.size()));
  }
  return row;
}

std::int64_t count_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, fmt::format("cannot open '{}'", path.string()));
  std::int64_t n = 0;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    auto got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) n += buf[static_cast<std::size_t>(i)] == '\n';
  }
  return n;
}

} // namespace ssbkit::datagen

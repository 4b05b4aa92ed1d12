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

#include <sqlite3.h>

#include <fmt/format.h>

#include "engines.hpp"
#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/datagen/tbl.hpp"
#include "ssbkit/workload/eval.hpp"

namespace ssbkit::harness::detail {

namespace {

class Statement {
 public:
  Statement(sqlite3* db, std::string_view sql) : db_(db) {
    const char* tail = nullptr;
    if (sqlite3_prepare_v2(db, sql.data(), static_cast<int>(sql.size()), &stmt_, &tail) != SQLITE_OK) {
      fail(ErrorKind::kEngine, fmt::format("sqlite: {}", sqlite3_errmsg(db)));
    }
    if (!stmt_) fail(ErrorKind::kEngine, "sqlite: empty statement");
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  /// True while rows are available.
  bool step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    fail(ErrorKind::kEngine, fmt::format("sqlite: {}", sqlite3_errmsg(db_)));
  }
  void reset() {
    sqlite3_reset(stmt_);
    sqlite3_clear_bindings(stmt_);
  }
  sqlite3_stmt* get() const { return stmt_; }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

std::string column_text(sqlite3_stmt* s, int i) {
  switch (sqlite3_column_type(s, i)) {
    case SQLITE_INTEGER:
      return std::to_string(sqlite3_column_int64(s, i));
    case SQLITE_FLOAT:
      return workload::canonical(workload::Datum{sqlite3_column_double(s, i)});
    case SQLITE_NULL:
      return "NULL";
    default: {
      const auto* text = reinterpret_cast<const char*>(sqlite3_column_text(s, i));
      return std::string(text, static_cast<std::size_t>(sqlite3_column_bytes(s, i)));
    }
  }
}

class SqliteEngine final : public EngineAdapter {
 public:
  explicit SqliteEngine(const ConnectionParams& params) {
    if (sqlite3_open_v2(params.path.c_str(), &db_, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE, nullptr) !=
        SQLITE_OK) {
      std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
      sqlite3_close(db_);
      fail(ErrorKind::kEngine, fmt::format("sqlite: cannot open '{}': {}", params.path, msg));
    }
  }
  ~SqliteEngine() override { sqlite3_close(db_); }

  std::string id() const override { return "sqlite"; }
  std::string version() const override { return std::string("SQLite ") + sqlite3_libversion(); }
  EngineCapabilities capabilities() const override {
    return {true, true, true, "EXPLAIN QUERY PLAN"};
  }
  schema::DdlOptions ddl_options(schema::KeyClauses keys) const override {
    return schema::dialect_options("sqlite", keys);
  }

  void execute(std::string_view sql) override {
    std::string owned(sql);
    char* err = nullptr;
    if (sqlite3_exec(db_, owned.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
      std::string msg = err ? err : "unknown error";
      sqlite3_free(err);
      fail(ErrorKind::kEngine, fmt::format("sqlite: {}", msg));
    }
  }

  std::int64_t bulk_load(const schema::TableDef& table, const std::filesystem::path& file) override {
    auto stored = table.stored_columns();
    std::vector<std::string> names;
    for (const auto* c : stored) names.push_back(c->name);
    std::string placeholders = join(std::vector<std::string>(names.size(), "?"), ", ");
    datagen::TblReader reader(table, file);
    execute("BEGIN");
    std::int64_t rows = 0;
    try {
      Statement insert(db_, fmt::format("INSERT INTO {} ({}) VALUES ({})", table.name, join(names, ", "),
                                        placeholders));
      while (auto row = reader.next()) {
        for (std::size_t i = 0; i < row->size(); ++i) bind(insert.get(), static_cast<int>(i + 1), (*row)[i]);
        insert.step();
        insert.reset();
        ++rows;
      }
      execute("COMMIT");
    } catch (...) {
      sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
      throw;
    }
    return rows;
  }

  std::int64_t count_rows(std::string_view table) override {
    Statement s(db_, fmt::format("SELECT COUNT(*) FROM {}", table));
    s.step();
    return sqlite3_column_int64(s.get(), 0);
  }

  ResultSet query(std::string_view sql) override {
    Statement s(db_, sql);
    ResultSet out;
    int n = sqlite3_column_count(s.get());
    for (int i = 0; i < n; ++i) out.columns.emplace_back(sqlite3_column_name(s.get(), i));
    while (s.step()) {
      std::vector<std::string> row;
      row.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) row.push_back(column_text(s.get(), i));
      out.rows.push_back(std::move(row));
    }
    return out;
  }

  std::string explain(std::string_view sql) override {
    Statement s(db_, fmt::format("EXPLAIN QUERY PLAN {}", sql));
    std::string out;
    while (s.step()) {
      out += fmt::format("{}|{}|{}\n", sqlite3_column_int(s.get(), 0), sqlite3_column_int(s.get(), 1),
                         column_text(s.get(), 3));
    }
    return out;
  }

  void flush_caches() override { sqlite3_db_release_memory(db_); }

 private:
  static void bind(sqlite3_stmt* s, int index, const Value& v) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Null>) {
            sqlite3_bind_null(s, index);
          } else if constexpr (std::is_same_v<T, std::int64_t>) {
            sqlite3_bind_int64(s, index, x);
          } else if constexpr (std::is_same_v<T, Decimal>) {
            sqlite3_bind_double(s, index, x.to_double());
          } else if constexpr (std::is_same_v<T, Date>) {
            auto text = x.to_string();
            sqlite3_bind_text(s, index, text.c_str(), static_cast<int>(text.size()), SQLITE_TRANSIENT);
          } else {
            sqlite3_bind_text(s, index, x.c_str(), static_cast<int>(x.size()), SQLITE_TRANSIENT);
          }
        },
        v);
  }

  sqlite3* db_ = nullptr;
};

} // namespace

std::unique_ptr<EngineAdapter> make_sqlite_engine(const ConnectionParams& params) {
  return std::make_unique<SqliteEngine>(params);
}

} // namespace ssbkit::harness::detail

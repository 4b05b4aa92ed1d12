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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssbkit/common/value.hpp"

namespace ssbkit::workload {

struct SelectStmt;

struct Expr {
  enum class Kind {
    kColumn,
    kLiteral,
    kStar,
    kBinary,    // op: + - * / = <> < <= > >= AND OR ||
    kUnary,     // op: - NOT
    kFunction,  // name in `op`, arguments in `args`
    kBetween,   // args: operand, low, high
    kInList,    // args: operand, list...
    kLike,      // args: operand, pattern
    kIsNull,    // args: operand
    kSubquery,  // scalar sub-select
    kExists,
    kInSubquery,  // args: operand
  };

  Kind kind = Kind::kLiteral;
  std::string op;
  std::string qualifier;  // table or alias for kColumn
  std::string name;       // column name for kColumn
  Value literal;
  std::vector<std::shared_ptr<Expr>> args;
  std::shared_ptr<SelectStmt> subquery;
  bool negated = false;
  bool distinct = false;
  /// Evaluation slot assigned by bind(); -1 when unbound.
  int slot = -1;
};

using ExprPtr = std::shared_ptr<Expr>;

struct SelectItem {
  ExprPtr expr;
  std::string alias;
};

struct TableRef {
  std::string name;
  std::string alias;
  std::shared_ptr<SelectStmt> derived;
};

struct OrderItem {
  ExprPtr expr;
  bool descending = false;
};

struct SelectStmt {
  bool distinct = false;
  std::vector<SelectItem> items;
  std::vector<TableRef> from;
  ExprPtr where;
  std::vector<ExprPtr> group_by;
  ExprPtr having;
  std::vector<OrderItem> order_by;
  std::optional<std::int64_t> limit;
};

/// Parses one SELECT statement (an optional trailing ';' is accepted).
/// Explicit JOIN ... ON clauses are folded into the WHERE conjunction.
/// Throws Error(kParse) with the offending position.
SelectStmt parse_select(std::string_view sql);

/// Top-level AND operands of `e` (empty for a null expression).
std::vector<ExprPtr> split_conjuncts(const ExprPtr& e);

/// Column references in `e`, excluding those inside sub-selects.
std::vector<const Expr*> column_refs(const Expr& e);

bool contains_subquery(const Expr& e);
bool is_aggregate_call(const Expr& e);
bool contains_aggregate(const Expr& e);

/// Every sub-select nested anywhere in `stmt` (FROM, WHERE, HAVING, items).
std::vector<const SelectStmt*> nested_selects(const SelectStmt& stmt);

/// Renders an expression back to SQL text (used for labels and messages).
std::string to_sql(const Expr& e);

} // namespace ssbkit::workload

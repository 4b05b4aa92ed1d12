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

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "ssbkit/common/value.hpp"
#include "ssbkit/workload/sql.hpp"

namespace ssbkit::workload {

/// Runtime value of an expression. Dates travel as ISO strings, matching
/// how text-typed engines store them.
using Datum = std::variant<Null, std::int64_t, Decimal, double, std::string>;

Datum to_datum(const Value& v);

/// Three-way comparison with SQL NULL semantics (nullopt if either is NULL).
/// Numbers compare exactly across int/decimal; numbers sort before text.
std::optional<int> compare(const Datum& a, const Datum& b);

Datum arithmetic(std::string_view op, const Datum& a, const Datum& b);

/// Canonical text used for result comparison and hashing: integers as-is,
/// other numerics with two decimals, NULL as "NULL".
std::string canonical(const Datum& d);

bool like_match(std::string_view text, std::string_view pattern);

class RowAccessor {
 public:
  virtual ~RowAccessor() = default;
  virtual Datum column(int slot) const = 0;
  virtual Datum aggregate(int slot) const;
};

/// Deep copy (sub-selects are shared, not copied).
ExprPtr clone(const ExprPtr& e);

/// Assigns evaluation slots to column references via `resolve`.
void bind_columns(Expr& e, const std::function<int(const Expr&)>& resolve);

Datum evaluate(const Expr& e, const RowAccessor& row);

/// WHERE semantics: NULL and zero are false.
bool is_true(const Datum& d);

} // namespace ssbkit::workload

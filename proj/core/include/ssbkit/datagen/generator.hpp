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
#include <string_view>
#include <vector>

#include "ssbkit/common/value.hpp"
#include "ssbkit/datagen/spec.hpp"
#include "ssbkit/schema/catalog.hpp"

namespace ssbkit::datagen {

/// One row holding the table's stored columns in declaration order.
using Row = std::vector<Value>;

/// Restartable, chunked row source. Chunks hold `chunk_rows` rows except
/// the last one.
class RowStream {
 public:
  virtual ~RowStream() = default;

  virtual const schema::TableDef& table() const = 0;
  virtual std::int64_t total_rows() const = 0;
  virtual std::int64_t chunk_rows() const = 0;

  /// Next chunk, or nullopt when exhausted.
  virtual std::optional<std::vector<Row>> next_chunk() = 0;
  /// Repositions so that next_chunk() returns chunk `index`.
  virtual void seek_chunk(std::int64_t index) = 0;
};

enum class Benchmark { kSsb, kTpch };

/// Streams the rows of an SSB table (variant kSsb) or of a TPC-H reference
/// table (kTpch). Throws Error(kNotFound) for unknown tables.
std::unique_ptr<RowStream> generate_table(const GenSpec& spec, std::string_view table,
                                          Benchmark benchmark = Benchmark::kSsb);

/// Measures of one fact row, in integer cents.
struct FactMeasures {
  std::int64_t revenue_cents = 0;
  std::int64_t supplycost_cents = 0;
  std::optional<std::int64_t> profit_cents;
};

/// Completes derived fact fields: LO_PROFIT = LO_REVENUE - LO_SUPPLYCOST.
/// Throws Error(kOverflow) if the difference does not fit in 64 bits.
FactMeasures derive_row_fields(const FactMeasures& raw);

/// extendedprice * (100 - discount) / 100, rounded half up, in cents.
std::int64_t compute_revenue(std::int64_t extendedprice_cents, std::int64_t discount_percent);

/// TPC-H retail price formula, in cents.
std::int64_t retail_price_cents(std::int64_t partkey);

} // namespace ssbkit::datagen

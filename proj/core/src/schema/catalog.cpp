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

#include "ssbkit/schema/catalog.hpp"

#include <set>

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"

namespace ssbkit::schema {

namespace {

ColumnDef col(std::string name, LogicalType type) {
  return ColumnDef{std::move(name), type, false, std::nullopt};
}

const LogicalType kInt = LogicalType::integer();
const LogicalType kMoney = LogicalType::decimal(15, 2);

TableDef make_customer() {
  TableDef t;
  t.name = "CUSTOMER";
  t.kind = TableKind::kDimension;
  t.columns = {
      col("C_CUSTKEY", kInt),
      col("C_NAME", LogicalType::var_text(25)),
      col("C_ADDRESS", LogicalType::var_text(25)),
      col("C_CITY", LogicalType::fixed_text(10)),
      col("C_NATION", LogicalType::fixed_text(15)),
      col("C_REGION", LogicalType::fixed_text(12)),
      col("C_PHONE", LogicalType::fixed_text(15)),
      col("C_MKTSEGMENT", LogicalType::fixed_text(10)),
  };
  t.primary_key = {"C_CUSTKEY"};
  t.provenance.denormalized_from = {"NATION", "REGION"};
  t.provenance.note = "NATION and REGION denormalized into address columns; CITY added";
  return t;
}

TableDef make_supplier() {
  TableDef t;
  t.name = "SUPPLIER";
  t.kind = TableKind::kDimension;
  t.columns = {
      col("S_SUPPKEY", kInt),
      col("S_NAME", LogicalType::fixed_text(25)),
      col("S_ADDRESS", LogicalType::var_text(25)),
      col("S_CITY", LogicalType::fixed_text(10)),
      col("S_NATION", LogicalType::fixed_text(15)),
      col("S_REGION", LogicalType::fixed_text(12)),
      col("S_PHONE", LogicalType::fixed_text(15)),
  };
  t.primary_key = {"S_SUPPKEY"};
  t.provenance.denormalized_from = {"NATION", "REGION"};
  t.provenance.note = "NATION and REGION denormalized into address columns; CITY added";
  return t;
}

TableDef make_part() {
  TableDef t;
  t.name = "PART";
  t.kind = TableKind::kDimension;
  t.columns = {
      col("P_PARTKEY", kInt),
      col("P_NAME", LogicalType::var_text(22)),
      col("P_MFGR", LogicalType::fixed_text(6)),
      col("P_CATEGORY", LogicalType::fixed_text(7)),
      col("P_BRAND1", LogicalType::fixed_text(9)),
      col("P_COLOR", LogicalType::var_text(11)),
      col("P_TYPE", LogicalType::var_text(25)),
      col("P_SIZE", kInt),
      col("P_CONTAINER", LogicalType::fixed_text(10)),
  };
  t.primary_key = {"P_PARTKEY"};
  t.provenance.note = "manufacturer/category/brand hierarchy";
  return t;
}

TableDef make_date(const std::string& name) {
  TableDef t;
  t.name = name;
  t.kind = TableKind::kDimension;
  t.columns = {
      col("D_DATEKEY", kInt),
      col("D_DATE", LogicalType::calendar_date()),
      col("D_DAYOFWEEK", LogicalType::fixed_text(9)),
      col("D_MONTH", LogicalType::fixed_text(9)),
      col("D_YEAR", kInt),
      col("D_YEARMONTHNUM", kInt),
      col("D_YEARMONTH", LogicalType::fixed_text(7)),
      col("D_DAYNUMINWEEK", kInt),
      col("D_DAYNUMINMONTH", kInt),
      col("D_DAYNUMINYEAR", kInt),
      col("D_MONTHNUMINYEAR", kInt),
      col("D_WEEKNUMINYEAR", kInt),
      col("D_SELLINGSEASON", LogicalType::var_text(12)),
      col("D_LASTDAYINWEEKFL", kInt),
      col("D_LASTDAYINMONTHFL", kInt),
      col("D_HOLIDAYFL", kInt),
      col("D_WEEKDAYFL", kInt),
  };
  t.primary_key = {"D_DATEKEY"};
  t.provenance.added = true;
  t.provenance.note = "calendar dimension added for the warehouse";
  return t;
}

TableDef make_lineorder(const SsbOptions& options) {
  TableDef t;
  t.name = "LINEORDER";
  t.kind = TableKind::kFact;
  t.columns = {
      col("LO_ORDERKEY", kInt),
      col("LO_LINENUMBER", kInt),
      col("LO_CUSTKEY", kInt),
      col("LO_PARTKEY", kInt),
      col("LO_SUPPKEY", kInt),
      col("LO_ORDERDATE", kInt),
      col("LO_ORDERPRIORITY", LogicalType::fixed_text(15)),
      col("LO_SHIPPRIORITY", LogicalType::fixed_text(1)),
      col("LO_QUANTITY", kInt),
      col("LO_EXTENDEDPRICE", kMoney),
      col("LO_ORDTOTALPRICE", kMoney),
      col("LO_DISCOUNT", kInt),
      col("LO_REVENUE", kMoney),
      col("LO_SUPPLYCOST", kMoney),
      col("LO_TAX", kInt),
      col("LO_COMMITDATE", kInt),
      col("LO_SHIPMODE", LogicalType::fixed_text(10)),
  };
  ColumnDef profit = col("LO_PROFIT", kMoney);
  if (!options.materialize_profit) profit.generated_expr = std::string(kProfitExpression);
  t.columns.push_back(std::move(profit));
  t.primary_key = {"LO_ORDERKEY", "LO_LINENUMBER"};
  t.foreign_keys = {
      {{"LO_CUSTKEY"}, "CUSTOMER", {"C_CUSTKEY"}},
      {{"LO_PARTKEY"}, "PART", {"P_PARTKEY"}},
      {{"LO_SUPPKEY"}, "SUPPLIER", {"S_SUPPKEY"}},
      {{"LO_ORDERDATE"}, options.date_table_name, {"D_DATEKEY"}},
      {{"LO_COMMITDATE"}, options.date_table_name, {"D_DATEKEY"}},
  };
  t.provenance.merged_from = {"LINEITEM", "ORDERS"};
  t.provenance.note = "merge of LINEITEM and ORDERS; PARTSUPP supply cost folded into LO_SUPPLYCOST";
  return t;
}

} // namespace

std::string_view to_string(LogicalKind kind) {
  switch (kind) {
    case LogicalKind::kInteger:
      return "integer";
    case LogicalKind::kDecimal:
      return "decimal";
    case LogicalKind::kFixedText:
      return "fixed_text";
    case LogicalKind::kVarText:
      return "var_text";
    case LogicalKind::kCalendarDate:
      return "calendar_date";
  }
  return "unknown";
}

std::string LogicalType::to_string() const {
  switch (kind) {
    case LogicalKind::kDecimal:
      return fmt::format("decimal({},{})", precision, scale);
    case LogicalKind::kFixedText:
      return fmt::format("fixed_text({})", length);
    case LogicalKind::kVarText:
      return fmt::format("var_text({})", length);
    default:
      return std::string(schema::to_string(kind));
  }
}

const ColumnDef* TableDef::find_column(std::string_view column) const {
  for (const auto& c : columns) {
    if (iequals(c.name, column)) return &c;
  }
  return nullptr;
}

std::size_t TableDef::column_index(std::string_view column) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (iequals(columns[i].name, column)) return i;
  }
  fail(ErrorKind::kNotFound, fmt::format("table {} has no column {}", name, column));
}

std::vector<const ColumnDef*> TableDef::stored_columns() const {
  std::vector<const ColumnDef*> out;
  for (const auto& c : columns) {
    if (c.is_stored()) out.push_back(&c);
  }
  return out;
}

SchemaCatalog::SchemaCatalog(std::string name, Variant variant, std::vector<TableDef> tables)
    : name_(std::move(name)), variant_(variant), tables_(std::move(tables)) {}

const TableDef* SchemaCatalog::find_table(std::string_view table) const {
  for (const auto& t : tables_) {
    if (iequals(t.name, table)) return &t;
  }
  return nullptr;
}

const TableDef& SchemaCatalog::table(std::string_view table) const {
  if (const auto* t = find_table(table)) return *t;
  fail(ErrorKind::kNotFound, fmt::format("unknown table {}", table));
}

const TableDef* SchemaCatalog::fact_table() const {
  for (const auto& t : tables_) {
    if (t.kind == TableKind::kFact) return &t;
  }
  return nullptr;
}

const TableDef* SchemaCatalog::owner_of(std::string_view column) const {
  for (const auto& t : tables_) {
    if (t.find_column(column)) return &t;
  }
  return nullptr;
}

SchemaCatalog build_ssb_catalog(const SsbOptions& options) {
  if (options.date_table_name.empty()) {
    fail(ErrorKind::kInvalidArgument, "date dimension name must not be empty");
  }
  std::vector<TableDef> tables;
  tables.push_back(make_customer());
  tables.push_back(make_supplier());
  tables.push_back(make_part());
  tables.push_back(make_date(to_upper(options.date_table_name)));
  auto lo = make_lineorder(options);
  for (auto& fk : lo.foreign_keys) fk.ref_table = to_upper(fk.ref_table);
  tables.push_back(std::move(lo));
  return SchemaCatalog("ssb", Variant::kSsb, std::move(tables));
}

SchemaCatalog build_tpch_reference_catalog() {
  auto fixed = LogicalType::fixed_text;
  auto var = LogicalType::var_text;
  auto date = LogicalType::calendar_date();
  std::vector<TableDef> tables;

  TableDef region{"REGION", TableKind::kDimension,
                  {col("R_REGIONKEY", kInt), col("R_NAME", fixed(25)), col("R_COMMENT", var(152))},
                  {"R_REGIONKEY"}, {}, {}};
  TableDef nation{"NATION",
                  TableKind::kDimension,
                  {col("N_NATIONKEY", kInt), col("N_NAME", fixed(25)), col("N_REGIONKEY", kInt),
                   col("N_COMMENT", var(152))},
                  {"N_NATIONKEY"},
                  {{{"N_REGIONKEY"}, "REGION", {"R_REGIONKEY"}}},
                  {}};
  TableDef part{"PART",
                TableKind::kDimension,
                {col("P_PARTKEY", kInt), col("P_NAME", var(55)), col("P_MFGR", fixed(25)),
                 col("P_BRAND", fixed(10)), col("P_TYPE", var(25)), col("P_SIZE", kInt),
                 col("P_CONTAINER", fixed(10)), col("P_RETAILPRICE", kMoney),
                 col("P_COMMENT", var(23))},
                {"P_PARTKEY"},
                {},
                {}};
  TableDef supplier{"SUPPLIER",
                    TableKind::kDimension,
                    {col("S_SUPPKEY", kInt), col("S_NAME", fixed(25)), col("S_ADDRESS", var(40)),
                     col("S_NATIONKEY", kInt), col("S_PHONE", fixed(15)),
                     col("S_ACCTBAL", kMoney), col("S_COMMENT", var(101))},
                    {"S_SUPPKEY"},
                    {{{"S_NATIONKEY"}, "NATION", {"N_NATIONKEY"}}},
                    {}};
  TableDef partsupp{"PARTSUPP",
                    TableKind::kFact,
                    {col("PS_PARTKEY", kInt), col("PS_SUPPKEY", kInt), col("PS_AVAILQTY", kInt),
                     col("PS_SUPPLYCOST", kMoney), col("PS_COMMENT", var(199))},
                    {"PS_PARTKEY", "PS_SUPPKEY"},
                    {{{"PS_PARTKEY"}, "PART", {"P_PARTKEY"}},
                     {{"PS_SUPPKEY"}, "SUPPLIER", {"S_SUPPKEY"}}},
                    {}};
  TableDef customer{"CUSTOMER",
                    TableKind::kDimension,
                    {col("C_CUSTKEY", kInt), col("C_NAME", var(25)), col("C_ADDRESS", var(40)),
                     col("C_NATIONKEY", kInt), col("C_PHONE", fixed(15)),
                     col("C_ACCTBAL", kMoney), col("C_MKTSEGMENT", fixed(10)),
                     col("C_COMMENT", var(117))},
                    {"C_CUSTKEY"},
                    {{{"C_NATIONKEY"}, "NATION", {"N_NATIONKEY"}}},
                    {}};
  TableDef orders{"ORDERS",
                  TableKind::kFact,
                  {col("O_ORDERKEY", kInt), col("O_CUSTKEY", kInt), col("O_ORDERSTATUS", fixed(1)),
                   col("O_TOTALPRICE", kMoney), col("O_ORDERDATE", date),
                   col("O_ORDERPRIORITY", fixed(15)), col("O_CLERK", fixed(15)),
                   col("O_SHIPPRIORITY", kInt), col("O_COMMENT", var(79))},
                  {"O_ORDERKEY"},
                  {{{"O_CUSTKEY"}, "CUSTOMER", {"C_CUSTKEY"}}},
                  {}};
  TableDef lineitem{"LINEITEM",
                    TableKind::kFact,
                    {col("L_ORDERKEY", kInt), col("L_PARTKEY", kInt), col("L_SUPPKEY", kInt),
                     col("L_LINENUMBER", kInt), col("L_QUANTITY", kMoney),
                     col("L_EXTENDEDPRICE", kMoney), col("L_DISCOUNT", kMoney),
                     col("L_TAX", kMoney), col("L_RETURNFLAG", fixed(1)),
                     col("L_LINESTATUS", fixed(1)), col("L_SHIPDATE", date),
                     col("L_COMMITDATE", date), col("L_RECEIPTDATE", date),
                     col("L_SHIPINSTRUCT", fixed(25)), col("L_SHIPMODE", fixed(10)),
                     col("L_COMMENT", var(44))},
                    {"L_ORDERKEY", "L_LINENUMBER"},
                    {{{"L_ORDERKEY"}, "ORDERS", {"O_ORDERKEY"}},
                     {{"L_PARTKEY", "L_SUPPKEY"}, "PARTSUPP", {"PS_PARTKEY", "PS_SUPPKEY"}}},
                    {}};

  tables.push_back(std::move(region));
  tables.push_back(std::move(nation));
  tables.push_back(std::move(part));
  tables.push_back(std::move(supplier));
  tables.push_back(std::move(partsupp));
  tables.push_back(std::move(customer));
  tables.push_back(std::move(orders));
  tables.push_back(std::move(lineitem));
  return SchemaCatalog("tpch", Variant::kTpchReference, std::move(tables));
}

std::vector<std::string> validate(const SchemaCatalog& catalog) {
  std::vector<std::string> out;
  std::set<std::string> table_names;
  int facts = 0;
  for (const auto& t : catalog.tables()) {
    if (t.name.empty()) out.push_back("table with empty name");
    if (!table_names.insert(to_upper(t.name)).second) {
      out.push_back(fmt::format("duplicate table {}", t.name));
    }
    if (t.kind == TableKind::kFact) ++facts;
    std::set<std::string> names;
    for (const auto& c : t.columns) {
      if (c.name.empty()) out.push_back(fmt::format("{}: column with empty name", t.name));
      if (!names.insert(to_upper(c.name)).second) {
        out.push_back(fmt::format("{}: duplicate column {}", t.name, c.name));
      }
      if (catalog.variant() == Variant::kSsb && c.nullable) {
        out.push_back(fmt::format("{}.{}: SSB columns are never nullable", t.name, c.name));
      }
    }
    for (const auto& pk : t.primary_key) {
      if (!t.find_column(pk)) out.push_back(fmt::format("{}: primary key column {} missing", t.name, pk));
    }
    for (const auto& fk : t.foreign_keys) {
      const auto* ref = catalog.find_table(fk.ref_table);
      if (!ref) {
        out.push_back(fmt::format("{}: foreign key targets unknown table {}", t.name, fk.ref_table));
        continue;
      }
      if (fk.columns.size() != fk.ref_columns.size()) {
        out.push_back(fmt::format("{}: foreign key arity mismatch", t.name));
      }
      for (const auto& c : fk.columns) {
        if (!t.find_column(c)) out.push_back(fmt::format("{}: foreign key column {} missing", t.name, c));
      }
      for (const auto& c : fk.ref_columns) {
        if (!ref->find_column(c)) {
          out.push_back(fmt::format("{}: foreign key references missing {}.{}", t.name, ref->name, c));
        }
      }
      if (catalog.variant() == Variant::kSsb && ref->kind != TableKind::kDimension) {
        out.push_back(fmt::format("{}: foreign key must reference a dimension", t.name));
      }
    }
  }
  if (catalog.variant() == Variant::kSsb) {
    if (facts != 1) out.push_back(fmt::format("SSB catalog must have exactly one fact table, found {}", facts));
    for (auto forbidden : {"PARTSUPP", "NATION", "REGION"}) {
      if (catalog.find_table(forbidden)) {
        out.push_back(fmt::format("SSB catalog must not contain {}", forbidden));
      }
    }
  }
  return out;
}

} // namespace ssbkit::schema

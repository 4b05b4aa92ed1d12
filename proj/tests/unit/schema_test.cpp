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


#include <algorithm>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/schema/catalog.hpp"
#include "ssbkit/schema/ddl.hpp"
#include "ssbkit/schema/diff.hpp"

namespace ssbkit::schema {
namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

bool has_record(const std::vector<TransformationRecord>& records, TransformKind kind,
                const std::string& source, const std::string& column = {}) {
  return std::any_of(records.begin(), records.end(), [&](const TransformationRecord& r) {
    return r.kind == kind && std::find(r.sources.begin(), r.sources.end(), source) != r.sources.end() &&
           (column.empty() || r.column == column);
  });
}

TEST(SsbCatalog, FiveTablesOneFact) {
  auto c = build_ssb_catalog();
  ASSERT_EQ(c.tables().size(), 5u);
  int facts = 0;
  for (const auto& t : c.tables()) facts += t.kind == TableKind::kFact;
  EXPECT_EQ(facts, 1);
  ASSERT_NE(c.fact_table(), nullptr);
  EXPECT_EQ(c.fact_table()->name, "LINEORDER");
  for (const char* name : {"CUSTOMER", "SUPPLIER", "PART", "DIM_DATE"}) EXPECT_NE(c.find_table(name), nullptr) << name;
}

TEST(SsbCatalog, DroppedAndDenormalizedTablesAbsent) {
  auto c = build_ssb_catalog();
  for (const char* name : {"PARTSUPP", "NATION", "REGION", "LINEITEM", "ORDERS"})
    EXPECT_EQ(c.find_table(name), nullptr) << name;
}

TEST(SsbCatalog, GeographyColumnsInlined) {
  auto c = build_ssb_catalog();
  for (const char* col : {"C_CITY", "C_NATION", "C_REGION"}) EXPECT_NE(c.table("CUSTOMER").find_column(col), nullptr);
  for (const char* col : {"S_CITY", "S_NATION", "S_REGION"}) EXPECT_NE(c.table("SUPPLIER").find_column(col), nullptr);
}

TEST(SsbCatalog, ProfitIsDerivedUnlessMaterialized) {
  auto virt = build_ssb_catalog();
  const auto* p = virt.table("LINEORDER").find_column("LO_PROFIT");
  ASSERT_NE(p, nullptr);
  EXPECT_FALSE(p->is_stored());
  EXPECT_EQ(*p->generated_expr, kProfitExpression);
  EXPECT_NE(virt.table("LINEORDER").find_column("LO_SUPPLYCOST"), nullptr);

  auto stored = build_ssb_catalog({.materialize_profit = true});
  EXPECT_TRUE(stored.table("LINEORDER").find_column("lo_profit")->is_stored());
  EXPECT_EQ(stored.table("LINEORDER").stored_columns().size(),
            virt.table("LINEORDER").stored_columns().size() + 1);
}

TEST(SsbCatalog, DateTableNameIsConfigurable) {
  auto c = build_ssb_catalog({.date_table_name = "DATES"});
  EXPECT_NE(c.find_table("DATES"), nullptr);
  EXPECT_EQ(c.find_table("DIM_DATE"), nullptr);
  for (const auto& fk : c.table("LINEORDER").foreign_keys) EXPECT_NE(fk.ref_table, "DIM_DATE");
}

TEST(SsbCatalog, CompositeFactKeyAndNoNullableColumns) {
  auto c = build_ssb_catalog();
  EXPECT_EQ(c.table("LINEORDER").primary_key, (std::vector<std::string>{"LO_ORDERKEY", "LO_LINENUMBER"}));
  for (const auto& t : c.tables())
    for (const auto& col : t.columns) EXPECT_FALSE(col.nullable) << t.name << "." << col.name;
  EXPECT_TRUE(validate(c).empty());
}

TEST(SsbCatalog, FactReferencesEveryDimension) {
  auto c = build_ssb_catalog();
  std::map<std::string, int> refs;
  for (const auto& fk : c.table("LINEORDER").foreign_keys) ++refs[fk.ref_table];
  for (const auto& t : c.tables()) {
    if (t.kind == TableKind::kDimension) {
      EXPECT_GE(refs[t.name], 1) << t.name;
    }
  }
  EXPECT_GE(refs["DIM_DATE"], 2);  // order date and commit date
}

TEST(SsbCatalog, ForeignKeysResolve) {
  for (const auto& c : {build_ssb_catalog(), build_tpch_reference_catalog()}) {
    for (const auto& t : c.tables()) {
      for (const auto& pk : t.primary_key) EXPECT_NE(t.find_column(pk), nullptr);
      for (const auto& fk : t.foreign_keys) {
        const auto* ref = c.find_table(fk.ref_table);
        ASSERT_NE(ref, nullptr) << fk.ref_table;
        ASSERT_EQ(fk.columns.size(), fk.ref_columns.size());
        for (const auto& col : fk.columns) EXPECT_NE(t.find_column(col), nullptr);
        for (const auto& col : fk.ref_columns) EXPECT_NE(ref->find_column(col), nullptr);
      }
    }
  }
}

TEST(SsbCatalog, OwnerLookupIsCaseInsensitive) {
  auto c = build_ssb_catalog();
  ASSERT_NE(c.owner_of("lo_discount"), nullptr);
  EXPECT_EQ(c.owner_of("lo_discount")->name, "LINEORDER");
  EXPECT_EQ(c.owner_of("d_year")->name, "DIM_DATE");
  EXPECT_EQ(c.owner_of("NO_SUCH_COLUMN"), nullptr);
  EXPECT_THROW(c.table("PARTSUPP"), Error);
}

TEST(TpchCatalog, EightTables) {
  auto c = build_tpch_reference_catalog();
  EXPECT_EQ(c.tables().size(), 8u);
  for (const char* name : {"PARTSUPP", "LINEITEM", "ORDERS", "NATION", "REGION", "PART", "SUPPLIER", "CUSTOMER"})
    EXPECT_NE(c.find_table(name), nullptr) << name;
}

TEST(Diff, SsbAgainstTpchDocumentsTransformations) {
  auto d = diff_catalogs(build_ssb_catalog(), build_tpch_reference_catalog());
  EXPECT_TRUE(has_record(d, TransformKind::kTableDropped, "PARTSUPP"));
  EXPECT_TRUE(has_record(d, TransformKind::kTableMerged, "LINEITEM"));
  EXPECT_TRUE(has_record(d, TransformKind::kTableMerged, "ORDERS"));
  EXPECT_TRUE(has_record(d, TransformKind::kTableDenormalizedInto, "NATION"));
  EXPECT_TRUE(has_record(d, TransformKind::kTableDenormalizedInto, "REGION"));
  EXPECT_TRUE(std::any_of(d.begin(), d.end(), [](const auto& r) {
    return r.kind == TransformKind::kTableAdded && r.targets == std::vector<std::string>{"DIM_DATE"};
  }));
  EXPECT_TRUE(std::any_of(d.begin(), d.end(), [](const auto& r) {
    return r.kind == TransformKind::kColumnAdded && r.column == "LO_SUPPLYCOST";
  }));
  for (const auto& r : d) {
    if (r.kind == TransformKind::kTableMerged) {
      EXPECT_EQ(r.targets, std::vector<std::string>{"LINEORDER"});
    }
  }
}

TEST(Diff, IdentityIsEmpty) {
  EXPECT_TRUE(diff_catalogs(build_ssb_catalog(), build_ssb_catalog()).empty());
  EXPECT_TRUE(diff_catalogs(build_tpch_reference_catalog(), build_tpch_reference_catalog()).empty());
}

TEST(Diff, ReverseDirectionHasNoMerges) {
  // Seen from TPC-H the merged tables reappear as separate additions.
  auto d = diff_catalogs(build_tpch_reference_catalog(), build_ssb_catalog());
  for (const auto& r : d) EXPECT_NE(r.kind, TransformKind::kTableMerged) << r.to_string();
  for (const char* name : {"LINEITEM", "ORDERS", "PARTSUPP"}) {
    EXPECT_TRUE(std::any_of(d.begin(), d.end(), [&](const auto& r) {
      return r.kind == TransformKind::kTableAdded && r.targets == std::vector<std::string>{name};
    })) << name;
  }
}

TEST(Ddl, FiveCreateTablesAndNoIndexes) {
  auto text = emit_ddl(build_ssb_catalog(), {.keys = KeyClauses::kPrimaryOnly});
  EXPECT_EQ(count_of(text, "CREATE TABLE"), 5u);
  EXPECT_EQ(count_of(text, "CREATE INDEX"), 0u);
  EXPECT_EQ(count_of(text, "FOREIGN KEY"), 0u);
  EXPECT_EQ(count_of(text, "PRIMARY KEY"), 5u);
}

TEST(Ddl, KeyClauseSelection) {
  auto c = build_ssb_catalog();
  EXPECT_EQ(count_of(emit_ddl(c, {.keys = KeyClauses::kNone}), "PRIMARY KEY"), 0u);
  auto full = emit_ddl(c, {.keys = KeyClauses::kPrimaryAndForeign});
  EXPECT_EQ(count_of(full, "FOREIGN KEY"), c.table("LINEORDER").foreign_keys.size());
}

TEST(Ddl, TablesInCatalogOrder) {
  auto c = build_ssb_catalog();
  auto text = emit_ddl(c, {});
  std::size_t last = 0;
  for (const auto& t : c.tables()) {
    auto pos = text.find("CREATE TABLE " + t.name + " ");
    ASSERT_NE(pos, std::string::npos) << t.name;
    EXPECT_GE(pos, last);
    last = pos;
  }
}

TEST(Ddl, DeterministicAndEmptyCatalog) {
  auto c = build_ssb_catalog();
  EXPECT_EQ(emit_ddl(c, dialect_options("sqlite")), emit_ddl(c, dialect_options("sqlite")));
  EXPECT_EQ(emit_ddl(SchemaCatalog{}, {}), "");
}

TEST(Ddl, TypeOverridesApply) {
  DdlOptions opts;
  opts.type_overrides[LogicalKind::kDecimal] = "NUMERIC_X";
  auto text = emit_ddl(build_ssb_catalog(), opts);
  EXPECT_NE(text.find("LO_EXTENDEDPRICE NUMERIC_X"), std::string::npos);
}

TEST(Ddl, UnsupportedTypeNamesColumn) {
  TableDef t{.name = "T", .columns = {{.name = "ODD_COL", .type = {static_cast<LogicalKind>(99)}}}};
  SchemaCatalog c("bad", Variant::kSsb, {t});
  try {
    emit_ddl(c, {});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("ODD_COL"), std::string::npos) << e.what();
  }
}

TEST(Ddl, GeneratedProfitColumn) {
  auto text = emit_ddl(build_ssb_catalog(), {});
  EXPECT_NE(text.find(std::string(kProfitExpression)), std::string::npos);
  auto stored = emit_ddl(build_ssb_catalog({.materialize_profit = true}), {});
  EXPECT_EQ(stored.find(std::string(kProfitExpression)), std::string::npos);
}

TEST(CatalogJson, ListsEveryTable) {
  auto j = to_json(build_ssb_catalog());
  std::set<std::string> names;
  for (const auto& t : j.at("tables")) names.insert(t.at("name").get<std::string>());
  EXPECT_EQ(names, (std::set<std::string>{"CUSTOMER", "SUPPLIER", "PART", "DIM_DATE", "LINEORDER"}));
}

} // namespace
} // namespace ssbkit::schema

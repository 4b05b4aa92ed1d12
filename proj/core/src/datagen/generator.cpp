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

#include "ssbkit/datagen/generator.hpp"

#include <array>
#include <numeric>

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/rng.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/datagen/text_pools.hpp"

namespace ssbkit::datagen {

namespace {

using schema::TableDef;

constexpr int kMaxLinesPerOrder = 7;

Value money(std::int64_t cents) { return Decimal{cents, 2}; }
Value integer(std::int64_t v) { return v; }
Value text(std::string s) { return Value{std::move(s)}; }

std::string random_text(Substream& s, int min_len, int max_len) {
  static constexpr std::string_view kAlphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789,. ";
  auto len = s.uniform(min_len, max_len);
  std::string out;
  out.reserve(static_cast<std::size_t>(len));
  for (std::int64_t i = 0; i < len; ++i) {
    out += kAlphabet[static_cast<std::size_t>(s.uniform(0, kAlphabet.size() - 2))];
  }
  return out;
}

std::string random_comment(Substream& s, int max_len) {
  const auto& words = comment_words();
  std::string out;
  while (true) {
    const auto& w = words[static_cast<std::size_t>(s.uniform(0, static_cast<std::int64_t>(words.size()) - 1))];
    if (out.size() + w.size() + 1 > static_cast<std::size_t>(max_len)) break;
    if (!out.empty()) out += ' ';
    out += w;
    if (s.uniform(0, 3) == 0) break;
  }
  return out;
}

template <typename Pool>
const std::string& pick(Substream& s, const Pool& pool) {
  return pool[static_cast<std::size_t>(s.uniform(0, static_cast<std::int64_t>(pool.size()) - 1))];
}

std::string phone(Substream& s, int nation_key) {
  return fmt::format("{:02}-{:03}-{:03}-{:04}", nation_key + 10, s.uniform(100, 999),
                     s.uniform(100, 999), s.uniform(1000, 9999));
}

/// Seeded Fisher-Yates permutation of [0, n).
std::vector<std::int64_t> permutation(Substream stream, std::int64_t n) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (std::int64_t j = n - 1; j > 0; --j) {
    auto k = stream.at(static_cast<std::uint64_t>(j)).uniform(0, j);
    std::swap(p[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(k)]);
  }
  return p;
}

/// Base for tables whose row i can be produced independently.
class IndexedStream : public RowStream {
 public:
  IndexedStream(TableDef table, std::int64_t rows, std::int64_t chunk)
      : table_(std::move(table)), rows_(rows), chunk_(chunk) {}

  const TableDef& table() const override { return table_; }
  std::int64_t total_rows() const override { return rows_; }
  std::int64_t chunk_rows() const override { return chunk_; }

  std::optional<std::vector<Row>> next_chunk() override {
    if (next_ >= rows_) return std::nullopt;
    auto end = std::min(rows_, next_ + chunk_);
    std::vector<Row> out;
    out.reserve(static_cast<std::size_t>(end - next_));
    for (; next_ < end; ++next_) out.push_back(make_row(next_));
    return out;
  }

  void seek_chunk(std::int64_t index) override { next_ = std::min(rows_, index * chunk_); }

 protected:
  virtual Row make_row(std::int64_t index) = 0;

 private:
  TableDef table_;
  std::int64_t rows_;
  std::int64_t chunk_;
  std::int64_t next_ = 0;
};

// ---------------------------------------------------------------------------
// SSB dimensions

class SsbCustomerStream final : public IndexedStream {
 public:
  SsbCustomerStream(const GenSpec& spec, TableDef table, Substream root)
      : IndexedStream(std::move(table), cardinality(spec.ssb_plan, "CUSTOMER", spec.sf, spec.calendar),
                      spec.chunk_rows),
        geo_(spec.geography),
        root_(root),
        members_(permutation(root.child("member"), total_rows())) {}

 protected:
  Row make_row(std::int64_t i) override {
    auto key = i + 1;
    auto m = geography_member(geo_, static_cast<int>(members_[static_cast<std::size_t>(i)]));
    auto addr = root_.child("address");
    auto ph = root_.child("phone");
    auto seg = root_.child("mktsegment");
    return {integer(key),
            text(fmt::format("Customer#{:09}", key)),
            text(random_text(addr.at(key), 10, 25)),
            text(m.city),
            text(m.nation),
            text(m.region),
            text(phone(ph.at(key), m.nation_key)),
            text(pick(seg.at(key), market_segments()))};
  }

 private:
  GeographyConfig geo_;
  Substream root_;
  std::vector<std::int64_t> members_;
};

class SsbSupplierStream final : public IndexedStream {
 public:
  SsbSupplierStream(const GenSpec& spec, TableDef table, Substream root)
      : IndexedStream(std::move(table), cardinality(spec.ssb_plan, "SUPPLIER", spec.sf, spec.calendar),
                      spec.chunk_rows),
        geo_(spec.geography),
        root_(root),
        members_(permutation(root.child("member"), total_rows())) {}

 protected:
  Row make_row(std::int64_t i) override {
    auto key = i + 1;
    auto m = geography_member(geo_, static_cast<int>(members_[static_cast<std::size_t>(i)]));
    auto addr = root_.child("address");
    auto ph = root_.child("phone");
    return {integer(key),
            text(fmt::format("Supplier#{:09}", key)),
            text(random_text(addr.at(key), 10, 25)),
            text(m.city),
            text(m.nation),
            text(m.region),
            text(phone(ph.at(key), m.nation_key))};
  }

 private:
  GeographyConfig geo_;
  Substream root_;
  std::vector<std::int64_t> members_;
};

class SsbPartStream final : public IndexedStream {
 public:
  SsbPartStream(const GenSpec& spec, TableDef table, Substream root)
      : IndexedStream(std::move(table), cardinality(spec.ssb_plan, "PART", spec.sf, spec.calendar),
                      spec.chunk_rows),
        hierarchy_(spec.part_hierarchy),
        root_(root),
        members_(permutation(root.child("member"), total_rows())) {}

 protected:
  Row make_row(std::int64_t i) override {
    auto key = i + 1;
    auto m = part_member(hierarchy_, static_cast<int>(members_[static_cast<std::size_t>(i)]));
    auto name = root_.child("name");
    name.at(key);
    auto color = root_.child("color");
    auto type = root_.child("type");
    type.at(key);
    auto size = root_.child("size");
    auto container = root_.child("container");
    container.at(key);
    const auto& n1 = pick(name, colors());
    const auto& n2 = pick(name, colors());
    auto ptype = fmt::format("{} {} {}", pick(type, type_syllables1()), pick(type, type_syllables2()),
                             pick(type, type_syllables3()));
    auto pcontainer = fmt::format("{} {}", pick(container, container_syllables1()),
                                  pick(container, container_syllables2()));
    return {integer(key),
            text(fmt::format("{} {}", n1, n2)),
            text(m.mfgr),
            text(m.category),
            text(m.brand),
            text(pick(color.at(key), colors())),
            text(std::move(ptype)),
            integer(size.at(key).uniform(1, 50)),
            text(std::move(pcontainer))};
  }

 private:
  PartHierarchyConfig hierarchy_;
  Substream root_;
  std::vector<std::int64_t> members_;
};

const std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};
const std::array<std::string_view, 7> kDayNames = {"Monday", "Tuesday",  "Wednesday", "Thursday",
                                                   "Friday", "Saturday", "Sunday"};

std::string_view selling_season(unsigned month) {
  if (month <= 2) return "Winter";
  if (month <= 4) return "Spring";
  if (month <= 8) return "Summer";
  if (month <= 10) return "Fall";
  return "Christmas";
}

bool is_holiday(const Date& d) {
  auto m = d.month();
  auto day = d.day();
  return (m == 1 && day == 1) || (m == 7 && day == 4) || (m == 12 && (day == 25 || day == 31));
}

class SsbDateStream final : public IndexedStream {
 public:
  SsbDateStream(const GenSpec& spec, TableDef table)
      : IndexedStream(std::move(table), spec.calendar.days(), spec.chunk_rows),
        start_(spec.calendar.start) {}

 protected:
  Row make_row(std::int64_t i) override {
    Date d = start_ + static_cast<std::int32_t>(i);
    auto month = d.month();
    auto wd = d.iso_weekday();
    auto doy = d.day_of_year();
    return {integer(d.as_key()),
            Value{d},
            text(std::string(kDayNames[wd - 1])),
            text(std::string(kMonthNames[month - 1])),
            integer(d.year()),
            integer(d.year() * 100 + static_cast<int>(month)),
            text(fmt::format("{}{}", kMonthNames[month - 1].substr(0, 3), d.year())),
            integer(wd),
            integer(d.day()),
            integer(doy),
            integer(month),
            integer((doy - 1) / 7 + 1),
            text(std::string(selling_season(month))),
            integer(wd == 7 ? 1 : 0),
            integer(d.is_last_day_of_month() ? 1 : 0),
            integer(is_holiday(d) ? 1 : 0),
            integer(wd <= 5 ? 1 : 0)};
  }

 private:
  Date start_;
};

// ---------------------------------------------------------------------------
// Orders with a variable number of lines (SSB LINEORDER, TPC-H ORDERS and
// LINEITEM). Line counts are drawn per order so any chunk can be located by
// replaying counts only.

class OrderLineStream : public RowStream {
 public:
  OrderLineStream(TableDef table, std::int64_t chunk, Substream line_counts)
      : table_(std::move(table)), chunk_(chunk), line_counts_(line_counts) {}

  const TableDef& table() const override { return table_; }
  std::int64_t chunk_rows() const override { return chunk_; }
  std::int64_t total_rows() const override { return total_; }

  std::optional<std::vector<Row>> next_chunk() override {
    if (emitted_ >= total_) return std::nullopt;
    std::vector<Row> out;
    auto want = std::min(chunk_, total_ - emitted_);
    out.reserve(static_cast<std::size_t>(want));
    while (static_cast<std::int64_t>(out.size()) < want) {
      if (pending_pos_ >= pending_.size()) fill_order(next_order_++);
      out.push_back(std::move(pending_[pending_pos_++]));
    }
    emitted_ += want;
    return out;
  }

  void seek_chunk(std::int64_t index) override {
    auto target = std::min(total_, index * chunk_);
    std::int64_t rows_before = 0;
    std::int64_t order = 1;
    while (true) {
      auto n = rows_in_order(order, rows_before);
      if (n == 0 || rows_before + n > target) break;
      rows_before += n;
      ++order;
    }
    next_order_ = order;
    pending_.clear();
    pending_pos_ = 0;
    emitted_ = rows_before;
    consumed_ = rows_before;
    if (target > rows_before) {
      fill_order(next_order_++);
      pending_pos_ = static_cast<std::size_t>(target - rows_before);
      emitted_ = target;
    }
  }

 protected:
  std::int64_t lines_of(std::int64_t order) {
    return line_counts_.at(static_cast<std::uint64_t>(order)).uniform(1, kMaxLinesPerOrder);
  }

  /// Rows contributed by `order` given the rows emitted before it.
  virtual std::int64_t rows_in_order(std::int64_t order, std::int64_t rows_before) = 0;
  /// Rows of `order` for this table, appended to pending_.
  virtual void emit_order(std::int64_t order, std::int64_t rows_before, std::vector<Row>& out) = 0;

  void set_total(std::int64_t total) { total_ = total; }

 private:
  void fill_order(std::int64_t order) {
    pending_.clear();
    pending_pos_ = 0;
    emit_order(order, consumed_, pending_);
    consumed_ += static_cast<std::int64_t>(pending_.size());
  }

  TableDef table_;
  std::int64_t chunk_;
  Substream line_counts_;
  std::int64_t total_ = 0;
  std::int64_t emitted_ = 0;
  std::int64_t consumed_ = 0;
  std::int64_t next_order_ = 1;
  std::vector<Row> pending_;
  std::size_t pending_pos_ = 0;
};

class SsbLineorderStream final : public OrderLineStream {
 public:
  SsbLineorderStream(const GenSpec& spec, TableDef table, Substream root)
      : OrderLineStream(std::move(table), spec.chunk_rows, root.child("lines")),
        root_(root),
        window_(order_window(spec.calendar)),
        materialize_profit_(spec.ssb.materialize_profit),
        customers_(cardinality(spec.ssb_plan, "CUSTOMER", spec.sf, spec.calendar)),
        parts_(cardinality(spec.ssb_plan, "PART", spec.sf, spec.calendar)),
        suppliers_(cardinality(spec.ssb_plan, "SUPPLIER", spec.sf, spec.calendar)) {
    set_total(cardinality(spec.ssb_plan, "LINEORDER", spec.sf, spec.calendar));
  }

 protected:
  std::int64_t rows_in_order(std::int64_t order, std::int64_t rows_before) override {
    return std::min(lines_of(order), total_rows() - rows_before);
  }

  void emit_order(std::int64_t order, std::int64_t rows_before, std::vector<Row>& out) override {
    auto n = rows_in_order(order, rows_before);
    auto key = static_cast<std::uint64_t>(order);
    auto custkey = root_.child("custkey").at(key).uniform(1, customers_);
    auto orderdate = window_.first + static_cast<std::int32_t>(
                                          root_.child("orderdate").at(key).uniform(0, window_.last - window_.first));
    auto priority_stream = root_.child("orderpriority");
    const auto& priority = pick(priority_stream.at(key), order_priorities());

    struct Line {
      std::int64_t partkey, suppkey, quantity, discount, tax, supplycost, extendedprice, revenue;
      Date commit;
      std::string shipmode;
    };
    std::vector<Line> lines;
    std::int64_t total = 0;
    for (std::int64_t l = 1; l <= n; ++l) {
      auto lk = key * 8 + static_cast<std::uint64_t>(l);
      Line line;
      line.partkey = root_.child("partkey").at(lk).uniform(1, parts_);
      line.suppkey = root_.child("suppkey").at(lk).uniform(1, suppliers_);
      line.quantity = root_.child("quantity").at(lk).uniform(1, 50);
      line.discount = root_.child("discount").at(lk).uniform(0, 10);
      line.tax = root_.child("tax").at(lk).uniform(0, 8);
      line.supplycost = root_.child("supplycost").at(lk).uniform(100, 100'000);
      line.commit = orderdate + static_cast<std::int32_t>(
                                    root_.child("commitlag").at(lk).uniform(window_.min_lag, window_.max_lag));
      auto ship = root_.child("shipmode");
      line.shipmode = pick(ship.at(lk), ship_modes());
      line.extendedprice = line.quantity * retail_price_cents(line.partkey);
      line.revenue = compute_revenue(line.extendedprice, line.discount);
      // Charge = price * (1 - discount) * (1 + tax), rounded per line.
      __int128 charge = static_cast<__int128>(line.extendedprice) * (100 - line.discount) * (100 + line.tax);
      total += static_cast<std::int64_t>((charge + 5000) / 10000);
      lines.push_back(std::move(line));
    }
    for (std::int64_t l = 1; l <= n; ++l) {
      auto& line = lines[static_cast<std::size_t>(l - 1)];
      Row row = {integer(order),
                 integer(l),
                 integer(custkey),
                 integer(line.partkey),
                 integer(line.suppkey),
                 integer(orderdate.as_key()),
                 text(priority),
                 text("0"),
                 integer(line.quantity),
                 money(line.extendedprice),
                 money(total),
                 integer(line.discount),
                 money(line.revenue),
                 money(line.supplycost),
                 integer(line.tax),
                 integer(line.commit.as_key()),
                 text(std::move(line.shipmode))};
      if (materialize_profit_) {
        auto m = derive_row_fields({line.revenue, line.supplycost, std::nullopt});
        row.push_back(money(*m.profit_cents));
      }
      out.push_back(std::move(row));
    }
  }

 private:
  Substream root_;
  OrderWindow window_;
  bool materialize_profit_;
  std::int64_t customers_;
  std::int64_t parts_;
  std::int64_t suppliers_;
};

// ---------------------------------------------------------------------------
// TPC-H reference tables

const Date kTpchCurrentDate = Date::from_ymd(1995, 6, 17);

std::int64_t tpch_partsupp_supplier(std::int64_t partkey, int i, std::int64_t suppliers) {
  return (partkey + (i * ((suppliers / 4) + (partkey - 1) / suppliers))) % suppliers + 1;
}

class TpchFixedStream final : public IndexedStream {
 public:
  TpchFixedStream(const GenSpec& spec, TableDef table, Substream root, bool is_region)
      : IndexedStream(std::move(table), is_region ? 5 : 25, spec.chunk_rows),
        root_(root),
        region_(is_region) {}

 protected:
  Row make_row(std::int64_t i) override {
    auto c = root_.child("comment");
    if (region_) {
      return {integer(i), text(regions()[static_cast<std::size_t>(i)]), text(random_comment(c.at(i), 152))};
    }
    const auto& n = nations()[static_cast<std::size_t>(i)];
    std::int64_t region_key = 0;
    for (std::size_t r = 0; r < regions().size(); ++r) {
      if (regions()[r] == n.region) region_key = static_cast<std::int64_t>(r);
    }
    return {integer(n.key), text(n.name), integer(region_key), text(random_comment(c.at(i), 152))};
  }

 private:
  Substream root_;
  bool region_;
};

class TpchPartStream final : public IndexedStream {
 public:
  TpchPartStream(const GenSpec& spec, TableDef table, Substream root)
      : IndexedStream(std::move(table), cardinality(spec.tpch_plan, "PART", spec.sf, spec.calendar),
                      spec.chunk_rows),
        root_(root) {}

 protected:
  Row make_row(std::int64_t i) override {
    auto key = i + 1;
    auto name = root_.child("name");
    name.at(key);
    std::vector<std::string> words;
    for (int w = 0; w < 5; ++w) words.push_back(pick(name, colors()));
    auto mfgr = root_.child("mfgr").at(key).uniform(1, 5);
    auto brand = root_.child("brand").at(key).uniform(1, 5);
    auto type = root_.child("type");
    type.at(key);
    auto ptype = fmt::format("{} {} {}", pick(type, type_syllables1()), pick(type, type_syllables2()),
                             pick(type, type_syllables3()));
    auto container = root_.child("container");
    container.at(key);
    auto pcontainer = fmt::format("{} {}", pick(container, container_syllables1()),
                                  pick(container, container_syllables2()));
    auto comment = root_.child("comment");
    return {integer(key),
            text(join(words, " ")),
            text(fmt::format("Manufacturer#{}", mfgr)),
            text(fmt::format("Brand#{}{}", mfgr, brand)),
            text(std::move(ptype)),
            integer(root_.child("size").at(key).uniform(1, 50)),
            text(std::move(pcontainer)),
            money(retail_price_cents(key)),
            text(random_comment(comment.at(key), 23))};
  }

 private:
  Substream root_;
};

class TpchSupplierStream final : public IndexedStream {
 public:
  TpchSupplierStream(const GenSpec& spec, TableDef table, Substream root)
      : IndexedStream(std::move(table), cardinality(spec.tpch_plan, "SUPPLIER", spec.sf, spec.calendar),
                      spec.chunk_rows),
        root_(root) {}

 protected:
  Row make_row(std::int64_t i) override {
    auto key = i + 1;
    auto nation = root_.child("nation").at(key).uniform(0, 24);
    auto addr = root_.child("address");
    auto ph = root_.child("phone");
    auto comment = root_.child("comment");
    return {integer(key),
            text(fmt::format("Supplier#{:09}", key)),
            text(random_text(addr.at(key), 10, 40)),
            integer(nation),
            text(phone(ph.at(key), static_cast<int>(nation))),
            money(root_.child("acctbal").at(key).uniform(-99'999, 999'999)),
            text(random_comment(comment.at(key), 101))};
  }

 private:
  Substream root_;
};

class TpchPartsuppStream final : public IndexedStream {
 public:
  TpchPartsuppStream(const GenSpec& spec, TableDef table, Substream root)
      : IndexedStream(std::move(table), 4 * cardinality(spec.tpch_plan, "PART", spec.sf, spec.calendar),
                      spec.chunk_rows),
        root_(root),
        suppliers_(cardinality(spec.tpch_plan, "SUPPLIER", spec.sf, spec.calendar)) {}

 protected:
  Row make_row(std::int64_t i) override {
    auto partkey = i / 4 + 1;
    auto comment = root_.child("comment");
    return {integer(partkey),
            integer(tpch_partsupp_supplier(partkey, static_cast<int>(i % 4), suppliers_)),
            integer(root_.child("availqty").at(i).uniform(1, 9999)),
            money(root_.child("supplycost").at(i).uniform(100, 100'000)),
            text(random_comment(comment.at(i), 199))};
  }

 private:
  Substream root_;
  std::int64_t suppliers_;
};

class TpchCustomerStream final : public IndexedStream {
 public:
  TpchCustomerStream(const GenSpec& spec, TableDef table, Substream root)
      : IndexedStream(std::move(table), cardinality(spec.tpch_plan, "CUSTOMER", spec.sf, spec.calendar),
                      spec.chunk_rows),
        root_(root) {}

 protected:
  Row make_row(std::int64_t i) override {
    auto key = i + 1;
    auto nation = root_.child("nation").at(key).uniform(0, 24);
    auto addr = root_.child("address");
    auto ph = root_.child("phone");
    auto seg = root_.child("mktsegment");
    auto comment = root_.child("comment");
    return {integer(key),
            text(fmt::format("Customer#{:09}", key)),
            text(random_text(addr.at(key), 10, 40)),
            integer(nation),
            text(phone(ph.at(key), static_cast<int>(nation))),
            money(root_.child("acctbal").at(key).uniform(-99'999, 999'999)),
            text(pick(seg.at(key), market_segments())),
            text(random_comment(comment.at(key), 117))};
  }

 private:
  Substream root_;
};

struct TpchLine {
  std::int64_t partkey, suppkey, quantity, discount, tax, extendedprice;
  Date ship, commit, receipt;
  std::string returnflag, linestatus, shipinstruct, shipmode, comment;
};

struct TpchOrder {
  std::int64_t custkey = 0;
  Date orderdate;
  std::string priority;
  std::int64_t clerk = 0;
  std::string comment;
  std::vector<TpchLine> lines;
  std::int64_t totalprice = 0;
  std::string status;
};

class TpchOrderSource {
 public:
  TpchOrderSource(const GenSpec& spec, Substream root)
      : root_(root),
        window_(order_window(spec.calendar)),
        customers_(cardinality(spec.tpch_plan, "CUSTOMER", spec.sf, spec.calendar)),
        parts_(cardinality(spec.tpch_plan, "PART", spec.sf, spec.calendar)),
        suppliers_(cardinality(spec.tpch_plan, "SUPPLIER", spec.sf, spec.calendar)),
        clerks_(std::max<std::int64_t>(1, spec.sf.scale_ceil(1000))) {}

  Substream line_counts() const { return root_.child("lines"); }

  TpchOrder make(std::int64_t order, std::int64_t n) const {
    auto key = static_cast<std::uint64_t>(order);
    TpchOrder o;
    o.custkey = root_.child("custkey").at(key).uniform(1, customers_);
    o.orderdate = window_.first + static_cast<std::int32_t>(
                                      root_.child("orderdate").at(key).uniform(0, window_.last - window_.first));
    auto pr = root_.child("orderpriority");
    o.priority = pick(pr.at(key), order_priorities());
    o.clerk = root_.child("clerk").at(key).uniform(1, clerks_);
    auto oc = root_.child("ocomment");
    o.comment = random_comment(oc.at(key), 79);
    int finished = 0;
    for (std::int64_t l = 1; l <= n; ++l) {
      auto lk = key * 8 + static_cast<std::uint64_t>(l);
      TpchLine line;
      line.partkey = root_.child("partkey").at(lk).uniform(1, parts_);
      line.suppkey = tpch_partsupp_supplier(line.partkey,
                                            static_cast<int>(root_.child("suppidx").at(lk).uniform(0, 3)),
                                            suppliers_);
      line.quantity = root_.child("quantity").at(lk).uniform(1, 50);
      line.discount = root_.child("discount").at(lk).uniform(0, 10);
      line.tax = root_.child("tax").at(lk).uniform(0, 8);
      line.extendedprice = line.quantity * retail_price_cents(line.partkey);
      line.ship = o.orderdate + static_cast<std::int32_t>(root_.child("shiplag").at(lk).uniform(1, 121));
      line.commit = o.orderdate + static_cast<std::int32_t>(root_.child("commitlag").at(lk).uniform(30, 90));
      line.receipt = line.ship + static_cast<std::int32_t>(root_.child("receiptlag").at(lk).uniform(1, 30));
      if (line.receipt <= kTpchCurrentDate) {
        line.returnflag = root_.child("returnflag").at(lk).uniform(0, 1) ? "R" : "A";
      } else {
        line.returnflag = "N";
      }
      line.linestatus = line.ship > kTpchCurrentDate ? "O" : "F";
      if (line.linestatus == "F") ++finished;
      auto si = root_.child("shipinstruct");
      line.shipinstruct = pick(si.at(lk), ship_instructions());
      auto sm = root_.child("shipmode");
      line.shipmode = pick(sm.at(lk), ship_modes());
      auto lc = root_.child("lcomment");
      line.comment = random_comment(lc.at(lk), 44);
      __int128 charge = static_cast<__int128>(line.extendedprice) * (100 - line.discount) * (100 + line.tax);
      o.totalprice += static_cast<std::int64_t>((charge + 5000) / 10000);
      o.lines.push_back(std::move(line));
    }
    o.status = finished == n ? "F" : finished == 0 ? "O" : "P";
    return o;
  }

 private:
  Substream root_;
  OrderWindow window_;
  std::int64_t customers_, parts_, suppliers_, clerks_;
};

class TpchOrdersStream final : public IndexedStream {
 public:
  TpchOrdersStream(const GenSpec& spec, TableDef table, Substream root)
      : IndexedStream(std::move(table), cardinality(spec.tpch_plan, "ORDERS", spec.sf, spec.calendar),
                      spec.chunk_rows),
        source_(spec, root),
        counts_(source_.line_counts()) {}

 protected:
  Row make_row(std::int64_t i) override {
    auto key = i + 1;
    auto n = counts_.at(static_cast<std::uint64_t>(key)).uniform(1, kMaxLinesPerOrder);
    auto o = source_.make(key, n);
    return {integer(key),
            integer(o.custkey),
            text(o.status),
            money(o.totalprice),
            Value{o.orderdate},
            text(o.priority),
            text(fmt::format("Clerk#{:09}", o.clerk)),
            integer(0),
            text(o.comment)};
  }

 private:
  TpchOrderSource source_;
  Substream counts_;
};

class TpchLineitemStream final : public OrderLineStream {
 public:
  TpchLineitemStream(const GenSpec& spec, TableDef table, Substream root)
      : OrderLineStream(std::move(table), spec.chunk_rows, TpchOrderSource(spec, root).line_counts()),
        source_(spec, root),
        orders_(cardinality(spec.tpch_plan, "ORDERS", spec.sf, spec.calendar)) {
    std::int64_t total = 0;
    for (std::int64_t o = 1; o <= orders_; ++o) total += lines_of(o);
    set_total(total);
  }

 protected:
  std::int64_t rows_in_order(std::int64_t order, std::int64_t) override {
    return order > orders_ ? 0 : lines_of(order);
  }

  void emit_order(std::int64_t order, std::int64_t, std::vector<Row>& out) override {
    auto o = source_.make(order, lines_of(order));
    std::int64_t l = 0;
    for (auto& line : o.lines) {
      ++l;
      out.push_back({integer(order), integer(line.partkey), integer(line.suppkey), integer(l),
                     money(line.quantity * 100), money(line.extendedprice), money(line.discount),
                     money(line.tax), text(line.returnflag), text(line.linestatus), Value{line.ship},
                     Value{line.commit}, Value{line.receipt}, text(line.shipinstruct),
                     text(line.shipmode), text(line.comment)});
    }
  }

 private:
  TpchOrderSource source_;
  std::int64_t orders_;
};

} // namespace

std::int64_t compute_revenue(std::int64_t extendedprice_cents, std::int64_t discount_percent) {
  __int128 v = static_cast<__int128>(extendedprice_cents) * (100 - discount_percent);
  return static_cast<std::int64_t>((v + 50) / 100);
}

std::int64_t retail_price_cents(std::int64_t partkey) {
  return 90'000 + ((partkey / 10) % 20'001) + 100 * (partkey % 1'000);
}

FactMeasures derive_row_fields(const FactMeasures& raw) {
  FactMeasures out = raw;
  std::int64_t profit = 0;
  if (__builtin_sub_overflow(raw.revenue_cents, raw.supplycost_cents, &profit)) {
    fail(ErrorKind::kOverflow,
         fmt::format("LO_PROFIT overflows: {} - {}", raw.revenue_cents, raw.supplycost_cents));
  }
  out.profit_cents = profit;
  return out;
}

std::unique_ptr<RowStream> generate_table(const GenSpec& spec, std::string_view name,
                                          Benchmark benchmark) {
  spec.validate();
  if (benchmark == Benchmark::kSsb) {
    auto catalog = schema::build_ssb_catalog(spec.ssb);
    const auto& t = catalog.table(name);
    auto root = Substream(spec.seed).child("ssb").child(t.name);
    if (t.name == "CUSTOMER") return std::make_unique<SsbCustomerStream>(spec, t, root);
    if (t.name == "SUPPLIER") return std::make_unique<SsbSupplierStream>(spec, t, root);
    if (t.name == "PART") return std::make_unique<SsbPartStream>(spec, t, root);
    if (t.name == "LINEORDER") return std::make_unique<SsbLineorderStream>(spec, t, root);
    return std::make_unique<SsbDateStream>(spec, t);
  }
  auto catalog = schema::build_tpch_reference_catalog();
  const auto& t = catalog.table(name);
  auto root = Substream(spec.seed).child("tpch").child(t.name);
  // ORDERS and LINEITEM must draw from the same order source.
  auto orders_root = Substream(spec.seed).child("tpch").child("ORDERS");
  if (t.name == "REGION") return std::make_unique<TpchFixedStream>(spec, t, root, true);
  if (t.name == "NATION") return std::make_unique<TpchFixedStream>(spec, t, root, false);
  if (t.name == "PART") return std::make_unique<TpchPartStream>(spec, t, root);
  if (t.name == "SUPPLIER") return std::make_unique<TpchSupplierStream>(spec, t, root);
  if (t.name == "PARTSUPP") return std::make_unique<TpchPartsuppStream>(spec, t, root);
  if (t.name == "CUSTOMER") return std::make_unique<TpchCustomerStream>(spec, t, root);
  if (t.name == "ORDERS") return std::make_unique<TpchOrdersStream>(spec, t, orders_root);
  return std::make_unique<TpchLineitemStream>(spec, t, orders_root);
}

} // namespace ssbkit::datagen

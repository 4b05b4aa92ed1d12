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

#include "ssbkit/workload/template.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/args.h>
#include <fmt/format.h>

#include "embedded.hpp"
#include "ssbkit/common/error.hpp"
#include "ssbkit/common/rng.hpp"
#include "ssbkit/common/strings.hpp"
#include "ssbkit/datagen/hierarchy.hpp"
#include "ssbkit/workload/estimate.hpp"
#include "ssbkit/workload/sql.hpp"

namespace ssbkit::workload {

namespace {

ParamValue value_from_json(const nlohmann::json& j, ParamDomain::Kind kind) {
  if (kind == ParamDomain::Kind::kDecimalRange) {
    auto text = j.get<std::string>();
    auto dot = text.find('.');
    int scale = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
    return Decimal::parse(text, scale);
  }
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  fail(ErrorKind::kParse, fmt::format("unsupported parameter value {}", j.dump()));
}

std::int64_t as_int(const ParamValue& v, std::string_view what) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
  fail(ErrorKind::kInvalidArgument, fmt::format("parameter {} must be an integer", what));
}

const ParamValue& lookup(const Bindings& b, const std::string& name) {
  for (const auto& [k, v] : b) {
    if (k == name) return v;
  }
  fail(ErrorKind::kInvalidArgument, fmt::format("derived parameter refers to unknown parameter '{}'", name));
}

ParamValue derive(const DerivedParam& d, const Bindings& b) {
  const auto& r = d.rule;
  auto op = r.at("op").get<std::string>();
  auto from = [&](const char* key) -> const ParamValue& { return lookup(b, r.at(key).get<std::string>()); };
  if (op == "add_int") {
    return as_int(from("from"), d.name) + r.at("value").get<std::int64_t>();
  }
  if (op == "add_mod") {
    auto m = r.at("modulus").get<std::int64_t>();
    if (m <= 0) fail(ErrorKind::kInvalidArgument, fmt::format("{}: modulus must be positive", d.name));
    return (as_int(from("from"), d.name) + as_int(from("add"), d.name)) % m;
  }
  if (op == "add_decimal") {
    const auto* base = std::get_if<Decimal>(&from("from"));
    if (!base) fail(ErrorKind::kInvalidArgument, fmt::format("{}: source must be a decimal", d.name));
    auto delta = Decimal::parse(r.at("value").get<std::string>(), base->scale);
    return Decimal{base->units + delta.units, base->scale};
  }
  if (op == "format") {
    fmt::dynamic_format_arg_store<fmt::format_context> store;
    for (const auto& a : r.at("args")) {
      const auto& v = lookup(b, a.get<std::string>());
      if (auto* i = std::get_if<std::int64_t>(&v)) {
        store.push_back(*i);
      } else if (auto* x = std::get_if<Decimal>(&v)) {
        store.push_back(x->to_string());
      } else {
        store.push_back(std::get<std::string>(v));
      }
    }
    auto text = fmt::vformat(r.at("format").get<std::string>(), store);
    if (r.value("as", "") == "int") return std::stoll(text);
    return text;
  }
  if (op == "city") {
    const auto* nation = std::get_if<std::string>(&from("nation"));
    if (!nation) fail(ErrorKind::kInvalidArgument, fmt::format("{}: nation must be text", d.name));
    return datagen::city_name(*nation, static_cast<int>(as_int(from("index"), d.name)));
  }
  fail(ErrorKind::kInvalidArgument, fmt::format("{}: unknown derivation '{}'", d.name, op));
}

std::vector<QueryTemplate> load_embedded(std::string_view prefix, datagen::Benchmark benchmark) {
  std::vector<QueryTemplate> out;
  for (const auto& [path, content] : detail::embedded_files()) {
    if (!path.starts_with(prefix) || !path.ends_with(".sql")) continue;
    auto stem = path.substr(0, path.size() - 4);
    auto sidecar = nlohmann::json::parse(detail::embedded_file(std::string(stem) + ".json"));
    auto t = QueryTemplate::from_text(std::string(content), sidecar);
    if (t.benchmark != benchmark) {
      fail(ErrorKind::kParse, fmt::format("{}: benchmark does not match its directory", path));
    }
    out.push_back(std::move(t));
  }
  std::ranges::sort(out, [](const auto& a, const auto& b) {
    return std::pair(a.flight, a.position) < std::pair(b.flight, b.position) ||
           (std::pair(a.flight, a.position) == std::pair(b.flight, b.position) && a.id < b.id);
  });
  return out;
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::kDate: return "date";
    case Dimension::kPart: return "part";
    case Dimension::kSupplier: return "supplier";
    case Dimension::kCustomer: return "customer";
  }
  return "?";
}

Dimension parse_dimension(std::string_view text) {
  for (auto d : {Dimension::kDate, Dimension::kPart, Dimension::kSupplier, Dimension::kCustomer}) {
    if (iequals(text, to_string(d))) return d;
  }
  fail(ErrorKind::kParse, fmt::format("unknown dimension '{}'", text));
}

std::string sql_literal(const ParamValue& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (auto* d = std::get_if<Decimal>(&v)) return d->to_string();
  std::string out = "'";
  for (char c : std::get<std::string>(v)) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

std::int64_t ParamDomain::size() const {
  switch (kind) {
    case Kind::kChoice:
      return static_cast<std::int64_t>(values.size());
    default:
      return max < min ? 0 : max - min + 1;
  }
}

ParamValue ParamDomain::at(std::int64_t index) const {
  if (index < 0 || index >= size()) {
    fail(ErrorKind::kInvalidArgument, fmt::format("domain index {} out of range", index));
  }
  switch (kind) {
    case Kind::kIntRange:
      return min + index;
    case Kind::kChoice:
      return values[static_cast<std::size_t>(index)];
    case Kind::kDateRange:
      return (date_min + static_cast<std::int32_t>(index)).to_string();
    case Kind::kDecimalRange:
      return Decimal{decimal_min.units + index, decimal_min.scale};
  }
  return std::int64_t{0};
}

bool ParamDomain::contains(const ParamValue& v) const {
  for (std::int64_t i = 0; i < size(); ++i) {
    if (at(i) == v) return true;
  }
  return false;
}

ParamDomain ParamDomain::from_json(const nlohmann::json& j) {
  ParamDomain d;
  auto kind = j.at("kind").get<std::string>();
  if (kind == "int_range") {
    d.kind = Kind::kIntRange;
    d.min = j.at("min").get<std::int64_t>();
    d.max = j.at("max").get<std::int64_t>();
  } else if (kind == "choice") {
    d.kind = Kind::kChoice;
    for (const auto& v : j.at("values")) d.values.push_back(value_from_json(v, d.kind));
  } else if (kind == "date_range") {
    d.kind = Kind::kDateRange;
    d.date_min = Date::parse(j.at("min").get<std::string>());
    d.min = 0;
    d.max = Date::parse(j.at("max").get<std::string>()) - d.date_min;
  } else if (kind == "decimal_range") {
    d.kind = Kind::kDecimalRange;
    auto lo = std::get<Decimal>(value_from_json(j.at("min"), d.kind));
    auto hi = std::get<Decimal>(value_from_json(j.at("max"), d.kind));
    if (lo.scale != hi.scale) fail(ErrorKind::kParse, "decimal_range bounds need the same scale");
    d.decimal_min = lo;
    d.min = 0;
    d.max = hi.units - lo.units;
  } else {
    fail(ErrorKind::kParse, fmt::format("unknown domain kind '{}'", kind));
  }
  return d;
}

QueryTemplate QueryTemplate::from_text(std::string body, const nlohmann::json& j) {
  QueryTemplate t;
  t.id = j.at("id").get<std::string>();
  auto bench = j.at("benchmark").get<std::string>();
  if (bench == "ssb") {
    t.benchmark = datagen::Benchmark::kSsb;
  } else if (bench == "tpch") {
    t.benchmark = datagen::Benchmark::kTpch;
  } else {
    fail(ErrorKind::kParse, fmt::format("{}: unknown benchmark '{}'", t.id, bench));
  }
  t.flight = j.value("flight", 0);
  if (t.benchmark == datagen::Benchmark::kSsb) {
    auto dot = t.id.find('.');
    if (dot == std::string::npos) fail(ErrorKind::kParse, fmt::format("malformed SSB label '{}'", t.id));
    t.position = std::stoi(t.id.substr(dot + 1));
  }
  t.title = j.value("title", "");
  t.body = std::move(body);
  for (const auto& d : j.value("dimensions", nlohmann::json::array())) {
    t.dimensions.insert(parse_dimension(d.get<std::string>()));
  }
  for (const auto& p : j.value("params", nlohmann::json::array())) {
    ParamSpec spec;
    spec.name = p.at("name").get<std::string>();
    spec.domain = ParamDomain::from_json(p.at("domain"));
    spec.default_value = value_from_json(p.at("default"), spec.domain.kind);
    if (spec.domain.size() == 0) {
      fail(ErrorKind::kInvalidArgument, fmt::format("{}: parameter {} has an empty domain", t.id, spec.name));
    }
    if (!spec.domain.contains(spec.default_value)) {
      fail(ErrorKind::kInvalidArgument,
           fmt::format("{}: default of {} lies outside its domain", t.id, spec.name));
    }
    t.params.push_back(std::move(spec));
  }
  for (const auto& d : j.value("derived", nlohmann::json::array())) {
    t.derived.push_back({d.at("name").get<std::string>(), d});
  }
  if (j.contains("counterpart")) t.counterpart = j.at("counterpart").get<std::string>();
  return t;
}

std::string QueryInstance::label() const {
  return benchmark == datagen::Benchmark::kSsb ? template_id : "TPCH-" + template_id;
}

nlohmann::json QueryInstance::to_json() const {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : bindings) {
    if (auto* i = std::get_if<std::int64_t>(&v)) {
      params[k] = *i;
    } else if (auto* d = std::get_if<Decimal>(&v)) {
      params[k] = d->to_string();
    } else {
      params[k] = std::get<std::string>(v);
    }
  }
  nlohmann::json dims = nlohmann::json::array();
  for (auto d : dimensions) dims.push_back(std::string(to_string(d)));
  nlohmann::json j = {{"label", label()},
                      {"template", template_id},
                      {"benchmark", benchmark == datagen::Benchmark::kSsb ? "ssb" : "tpch"},
                      {"params", params},
                      {"dimensions", dims},
                      {"estimated_filter_factor", estimated_filter_factor},
                      {"sql", sql}};
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return j;
}

const std::vector<QueryTemplate>& flight_catalog() {
  static const auto templates = load_embedded("ssb/", datagen::Benchmark::kSsb);
  return templates;
}

const std::vector<QueryTemplate>& tpch_reference_queries() {
  static const auto templates = load_embedded("tpch/", datagen::Benchmark::kTpch);
  return templates;
}

const QueryTemplate& find_template(std::string_view id, datagen::Benchmark benchmark) {
  const auto& all = benchmark == datagen::Benchmark::kSsb ? flight_catalog() : tpch_reference_queries();
  auto wanted = to_upper(trim(id));
  if (benchmark == datagen::Benchmark::kTpch && wanted.starts_with("TPCH-")) wanted = wanted.substr(5);
  for (const auto& t : all) {
    if (t.id == wanted) return t;
  }
  fail(ErrorKind::kNotFound, fmt::format("no query template '{}'", id));
}

QueryTemplate load_template(const std::filesystem::path& sql_file) {
  auto read = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) fail(ErrorKind::kIo, fmt::format("cannot open '{}'", p.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto sidecar = sql_file;
  sidecar.replace_extension(".json");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read(sidecar));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, fmt::format("{}: {}", sidecar.string(), e.what()));
  }
  return QueryTemplate::from_text(read(sql_file), j);
}

Bindings bind_parameters(const QueryTemplate& t, std::optional<std::uint64_t> seed) {
  Bindings b;
  Substream root = seed ? Substream(*seed).child("workload").child(t.id) : Substream();
  for (const auto& p : t.params) {
    if (!seed) {
      b.emplace_back(p.name, p.default_value);
      continue;
    }
    auto n = p.domain.size();
    if (n == 0) fail(ErrorKind::kInvalidArgument, fmt::format("{}: parameter {} has an empty domain", t.id, p.name));
    auto s = root.child(p.name);
    b.emplace_back(p.name, p.domain.at(s.uniform(0, n - 1)));
  }
  for (const auto& d : t.derived) b.emplace_back(d.name, derive(d, b));
  return b;
}

std::string render_sql(const QueryTemplate& t, const Bindings& bindings, std::string_view date_table_name) {
  const std::string& body = t.body;
  bool rename = !iequals(date_table_name, "DIM_DATE");
  std::string out;
  out.reserve(body.size() + 64);
  std::size_t i = 0;
  while (i < body.size()) {
    char c = body[i];
    if (c == '\'') {
      auto end = body.find('\'', i + 1);
      if (end == std::string::npos) end = body.size() - 1;
      out.append(body, i, end - i + 1);
      i = end + 1;
    } else if (c == ':' && i + 1 < body.size() && (std::isalpha(static_cast<unsigned char>(body[i + 1])) || body[i + 1] == '_')) {
      std::size_t j = i + 1;
      while (j < body.size() && ident_char(body[j])) ++j;
      auto name = body.substr(i + 1, j - i - 1);
      auto it = std::ranges::find_if(bindings, [&](const auto& kv) { return kv.first == name; });
      if (it == bindings.end()) {
        fail(ErrorKind::kInvalidArgument, fmt::format("{}: unbound placeholder :{}", t.id, name));
      }
      out += sql_literal(it->second);
      i = j;
    } else if (ident_char(c) && (i == 0 || !ident_char(body[i - 1]))) {
      std::size_t j = i;
      while (j < body.size() && ident_char(body[j])) ++j;
      std::string_view word(body.data() + i, j - i);
      out += rename && iequals(word, "DIM_DATE") ? std::string(date_table_name) : std::string(word);
      i = j;
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

const datagen::GenSpec& default_data_spec() {
  static const auto spec = datagen::make_spec(ScaleFactor(1, 1), 42);
  return spec;
}

QueryInstance instantiate(const QueryTemplate& t, std::optional<std::uint64_t> seed,
                          const datagen::GenSpec& data) {
  QueryInstance q;
  q.template_id = t.id;
  q.benchmark = t.benchmark;
  q.seed = seed;
  q.bindings = bind_parameters(t, seed);
  q.dimensions = t.dimensions;
  auto date_table = t.benchmark == datagen::Benchmark::kSsb ? data.ssb.date_table_name : "DIM_DATE";
  q.sql = render_sql(t, q.bindings, date_table);
  q.estimated_filter_factor =
      t.benchmark == datagen::Benchmark::kSsb ? estimated_filter_factor(q.sql, data) : 1.0;
  return q;
}

QueryInstance instantiate(const QueryTemplate& t, std::optional<std::uint64_t> seed) {
  return instantiate(t, seed, default_data_spec());
}

std::vector<Violation> validate_sql(std::string_view sql, const schema::SchemaCatalog& catalog) {
  std::vector<Violation> out;
  SelectStmt stmt;
  try {
    stmt = parse_select(sql);
  } catch (const Error& e) {
    out.push_back({"parse_error", e.what()});
    return out;
  }
  if (!nested_selects(stmt).empty()) out.push_back({"subquery_forbidden", "nested SELECT found"});

  const auto* fact = catalog.fact_table();
  int fact_refs = 0;
  std::map<std::string, std::string> aliases;  // alias -> table
  for (const auto& ref : stmt.from) {
    if (ref.derived) continue;
    const auto* t = catalog.find_table(ref.name);
    if (!t) {
      out.push_back({"unknown_table", ref.name});
      continue;
    }
    aliases[ref.alias.empty() ? t->name : ref.alias] = t->name;
    if (fact && t->name == fact->name) ++fact_refs;
  }
  if (fact && fact_refs == 0) out.push_back({"fact_table_missing", fact->name + " is not referenced"});
  if (fact_refs > 1) {
    out.push_back({"self_join_forbidden", fmt::format("{} referenced {} times", fact->name, fact_refs)});
  }

  std::set<std::string> item_aliases;
  for (const auto& i : stmt.items) {
    if (!i.alias.empty()) item_aliases.insert(i.alias);
  }
  auto check = [&](const Expr& e) {
    for (const auto* c : column_refs(e)) {
      if (c->qualifier.empty() && item_aliases.contains(c->name)) continue;
      bool ok = false;
      if (!c->qualifier.empty()) {
        auto it = aliases.find(c->qualifier);
        ok = it != aliases.end() && catalog.table(it->second).find_column(c->name);
      } else {
        for (const auto& [alias, table] : aliases) ok = ok || catalog.table(table).find_column(c->name);
      }
      if (!ok) out.push_back({"unknown_column", to_sql(*c)});
    }
  };
  for (const auto& i : stmt.items) check(*i.expr);
  if (stmt.where) check(*stmt.where);
  for (const auto& g : stmt.group_by) check(*g);
  if (stmt.having) check(*stmt.having);
  for (const auto& o : stmt.order_by) check(*o.expr);
  return out;
}

std::vector<Violation> validate_template(const QueryTemplate& t, const schema::SchemaCatalog& catalog) {
  std::string sql;
  try {
    std::string date_table = "DIM_DATE";
    if (const auto* fact = catalog.fact_table()) {
      for (const auto& fk : fact->foreign_keys) {
        if (fk.columns == std::vector<std::string>{"LO_ORDERDATE"}) date_table = fk.ref_table;
      }
    }
    sql = render_sql(t, bind_parameters(t, std::nullopt), date_table);
  } catch (const Error& e) {
    return {{"parse_error", e.what()}};
  }
  return validate_sql(sql, catalog);
}

std::set<Dimension> restricted_dimensions(std::string_view sql, const schema::SsbOptions& options) {
  auto catalog = schema::build_ssb_catalog(options);
  auto stmt = parse_select(sql);
  std::set<Dimension> out;
  for (const auto& c : split_conjuncts(stmt.where)) {
    bool join = c->kind == Expr::Kind::kBinary && c->op == "=" &&
                c->args[0]->kind == Expr::Kind::kColumn && c->args[1]->kind == Expr::Kind::kColumn;
    if (join) continue;
    for (const auto* col : column_refs(*c)) {
      const auto* owner = catalog.owner_of(col->name);
      if (!owner) continue;
      if (owner->name == catalog.table(options.date_table_name).name) out.insert(Dimension::kDate);
      if (owner->name == "PART") out.insert(Dimension::kPart);
      if (owner->name == "SUPPLIER") out.insert(Dimension::kSupplier);
      if (owner->name == "CUSTOMER") out.insert(Dimension::kCustomer);
    }
  }
  return out;
}

bool FlightCoverage::strictly_decreasing() const {
  for (std::size_t i = 1; i < templates.size(); ++i) {
    if (!(templates[i].estimated_filter_factor < templates[i - 1].estimated_filter_factor)) return false;
  }
  return true;
}

nlohmann::json CoverageReport::to_json() const {
  auto dims = [](const std::set<Dimension>& s) {
    nlohmann::json a = nlohmann::json::array();
    for (auto d : s) a.push_back(std::string(to_string(d)));
    return a;
  };
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : flights) {
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& t : f.templates) {
      ts.push_back({{"id", t.id}, {"dimensions", dims(t.dimensions)},
                    {"estimated_filter_factor", t.estimated_filter_factor}});
    }
    out.push_back({{"flight", f.flight},
                   {"dimensions", dims(f.dimensions)},
                   {"dimension_count", f.dimensions.size()},
                   {"min_filter_factor", f.min_filter_factor},
                   {"max_filter_factor", f.max_filter_factor},
                   {"spread", f.spread()},
                   {"strictly_decreasing", f.strictly_decreasing()},
                   {"templates", ts}});
  }
  return {{"flights", out}};
}

CoverageReport coverage_report(const std::vector<QueryTemplate>& templates, const datagen::GenSpec& data) {
  CoverageReport report;
  for (const auto& t : templates) {
    auto q = instantiate(t, std::nullopt, data);
    auto it = std::ranges::find_if(report.flights, [&](const auto& f) { return f.flight == t.flight; });
    if (it == report.flights.end()) {
      report.flights.push_back({t.flight, {}, {}, q.estimated_filter_factor, q.estimated_filter_factor});
      it = std::prev(report.flights.end());
    }
    it->dimensions.insert(t.dimensions.begin(), t.dimensions.end());
    it->templates.push_back({t.id, t.dimensions, q.estimated_filter_factor});
    it->min_filter_factor = std::min(it->min_filter_factor, q.estimated_filter_factor);
    it->max_filter_factor = std::max(it->max_filter_factor, q.estimated_filter_factor);
  }
  return report;
}

} // namespace ssbkit::workload

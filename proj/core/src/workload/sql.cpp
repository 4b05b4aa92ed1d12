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

#include "ssbkit/workload/sql.hpp"

#include <cctype>
#include <charconv>
#include <set>

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"
#include "ssbkit/common/strings.hpp"

namespace ssbkit::workload {

namespace {

enum class Tok { kIdent, kNumber, kString, kSymbol, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;  // identifiers upper-cased, strings unquoted
  std::size_t pos = 0;
};

std::vector<Token> lex(std::string_view sql) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto at = [&](std::size_t k) { return k < sql.size() ? sql[k] : '\0'; };
  while (i < sql.size()) {
    char c = sql[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && at(i + 1) == '-') {
      while (i < sql.size() && sql[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (std::isalnum(static_cast<unsigned char>(at(i))) || at(i) == '_') ++i;
      out.push_back({Tok::kIdent, to_upper(sql.substr(start, i - start)), start});
    } else if (c == '"') {
      auto end = sql.find('"', i + 1);
      if (end == std::string_view::npos) {
        fail(ErrorKind::kParse, fmt::format("unterminated quoted identifier at offset {}", start));
      }
      out.push_back({Tok::kIdent, to_upper(sql.substr(i + 1, end - i - 1)), start});
      i = end + 1;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && std::isdigit(static_cast<unsigned char>(at(i + 1))))) {
      while (std::isdigit(static_cast<unsigned char>(at(i))) || at(i) == '.') ++i;
      out.push_back({Tok::kNumber, std::string(sql.substr(start, i - start)), start});
    } else if (c == '\'') {
      std::string text;
      ++i;
      for (;;) {
        if (i >= sql.size()) {
          fail(ErrorKind::kParse, fmt::format("unterminated string literal at offset {}", start));
        }
        if (sql[i] == '\'') {
          if (at(i + 1) == '\'') {
            text += '\'';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        text += sql[i++];
      }
      out.push_back({Tok::kString, std::move(text), start});
    } else {
      static const std::set<std::string, std::less<>> two = {"<=", ">=", "<>", "!=", "||"};
      std::string sym(sql.substr(i, 2));
      if (two.contains(sym)) {
        i += 2;
        if (sym == "!=") sym = "<>";
      } else if (std::string_view("(),.;*+-/=<>:").find(c) != std::string_view::npos) {
        sym = std::string(1, c);
        ++i;
      } else {
        fail(ErrorKind::kParse, fmt::format("unexpected character '{}' at offset {}", c, start));
      }
      out.push_back({Tok::kSymbol, std::move(sym), start});
    }
  }
  out.push_back({Tok::kEnd, "", sql.size()});
  return out;
}

const std::set<std::string, std::less<>>& reserved() {
  static const std::set<std::string, std::less<>> words = {
      "SELECT", "FROM",   "WHERE", "GROUP", "BY",  "ORDER",   "HAVING", "LIMIT", "AND",
      "OR",     "NOT",    "ON",    "JOIN",  "INNER", "CROSS", "AS",     "ASC",   "DESC",
      "BETWEEN", "IN",    "LIKE",  "IS",    "NULL", "EXISTS", "UNION",  "DISTINCT"};
  return words;
}

ExprPtr make(Expr::Kind kind) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  return e;
}

ExprPtr binary(std::string op, ExprPtr a, ExprPtr b) {
  auto e = make(Expr::Kind::kBinary);
  e->op = std::move(op);
  e->args = {std::move(a), std::move(b)};
  return e;
}

Value number_literal(const std::string& text, std::size_t pos) {
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size()) {
      fail(ErrorKind::kParse, fmt::format("invalid number '{}' at offset {}", text, pos));
    }
    return v;
  }
  int scale = static_cast<int>(text.size() - dot - 1);
  return Decimal::parse(text, scale);
}

class Parser {
 public:
  explicit Parser(std::string_view sql) : tokens_(lex(sql)) {}

  SelectStmt statement() {
    auto stmt = select();
    accept_symbol(";");
    if (peek().kind != Tok::kEnd) error("unexpected trailing input");
    return stmt;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  Token take() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  bool is_keyword(std::string_view kw, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == Tok::kIdent && t.text == kw;
  }
  bool is_symbol(std::string_view s, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == Tok::kSymbol && t.text == s;
  }
  bool accept_keyword(std::string_view kw) {
    if (!is_keyword(kw)) return false;
    ++pos_;
    return true;
  }
  bool accept_symbol(std::string_view s) {
    if (!is_symbol(s)) return false;
    ++pos_;
    return true;
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) error(fmt::format("expected {}", kw));
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) error(fmt::format("expected '{}'", s));
  }
  [[noreturn]] void error(const std::string& what) const {
    const auto& t = peek();
    std::string near = t.kind == Tok::kEnd ? "end of input" : fmt::format("'{}'", t.text);
    fail(ErrorKind::kParse, fmt::format("{} near {} at offset {}", what, near, t.pos));
  }

  std::string identifier() {
    const auto& t = peek();
    if (t.kind != Tok::kIdent || reserved().contains(t.text)) error("expected identifier");
    return take().text;
  }

  std::optional<std::string> optional_alias() {
    if (accept_keyword("AS")) return identifier();
    const auto& t = peek();
    if (t.kind == Tok::kIdent && !reserved().contains(t.text)) return take().text;
    return std::nullopt;
  }

  SelectStmt select() {
    expect_keyword("SELECT");
    SelectStmt s;
    s.distinct = accept_keyword("DISTINCT");
    do {
      SelectItem item;
      item.expr = expression();
      if (auto a = optional_alias()) item.alias = *a;
      s.items.push_back(std::move(item));
    } while (accept_symbol(","));

    std::vector<ExprPtr> join_conditions;
    if (accept_keyword("FROM")) {
      s.from.push_back(table_ref());
      for (;;) {
        if (accept_symbol(",")) {
          s.from.push_back(table_ref());
        } else if (is_keyword("JOIN") || is_keyword("INNER") || is_keyword("CROSS")) {
          bool cross = accept_keyword("CROSS");
          if (!cross) accept_keyword("INNER");
          expect_keyword("JOIN");
          s.from.push_back(table_ref());
          if (!cross) {
            expect_keyword("ON");
            join_conditions.push_back(expression());
          }
        } else {
          break;
        }
      }
    }
    if (accept_keyword("WHERE")) s.where = expression();
    for (auto& c : join_conditions) s.where = s.where ? binary("AND", std::move(c), s.where) : std::move(c);
    if (accept_keyword("GROUP")) {
      expect_keyword("BY");
      do s.group_by.push_back(expression());
      while (accept_symbol(","));
    }
    if (accept_keyword("HAVING")) s.having = expression();
    if (accept_keyword("ORDER")) {
      expect_keyword("BY");
      do {
        OrderItem o;
        o.expr = expression();
        if (accept_keyword("DESC")) {
          o.descending = true;
        } else {
          accept_keyword("ASC");
        }
        s.order_by.push_back(std::move(o));
      } while (accept_symbol(","));
    }
    if (accept_keyword("LIMIT")) {
      const auto& t = peek();
      if (t.kind != Tok::kNumber) error("expected LIMIT count");
      auto v = number_literal(take().text, t.pos);
      if (!std::holds_alternative<std::int64_t>(v)) error("LIMIT must be an integer");
      s.limit = std::get<std::int64_t>(v);
    }
    return s;
  }

  TableRef table_ref() {
    TableRef ref;
    if (accept_symbol("(")) {
      ref.derived = std::make_shared<SelectStmt>(select());
      expect_symbol(")");
    } else {
      ref.name = identifier();
    }
    if (auto a = optional_alias()) ref.alias = *a;
    return ref;
  }

  ExprPtr expression() { return disjunction(); }

  ExprPtr disjunction() {
    auto e = conjunction();
    while (accept_keyword("OR")) e = binary("OR", e, conjunction());
    return e;
  }

  ExprPtr conjunction() {
    auto e = negation();
    while (accept_keyword("AND")) e = binary("AND", e, negation());
    return e;
  }

  ExprPtr negation() {
    if (accept_keyword("NOT")) {
      auto e = make(Expr::Kind::kUnary);
      e->op = "NOT";
      e->args = {negation()};
      return e;
    }
    return comparison();
  }

  ExprPtr comparison() {
    auto left = concatenation();
    for (;;) {
      const auto& t = peek();
      if (t.kind == Tok::kSymbol &&
          (t.text == "=" || t.text == "<>" || t.text == "<" || t.text == "<=" || t.text == ">" ||
           t.text == ">=")) {
        auto op = take().text;
        left = binary(op, left, concatenation());
        continue;
      }
      bool negated = false;
      if (is_keyword("NOT") && (is_keyword("BETWEEN", 1) || is_keyword("IN", 1) || is_keyword("LIKE", 1))) {
        ++pos_;
        negated = true;
      }
      if (accept_keyword("BETWEEN")) {
        auto e = make(Expr::Kind::kBetween);
        auto lo = concatenation();
        expect_keyword("AND");
        auto hi = concatenation();
        e->args = {left, lo, hi};
        e->negated = negated;
        left = e;
      } else if (accept_keyword("IN")) {
        expect_symbol("(");
        if (is_keyword("SELECT")) {
          auto e = make(Expr::Kind::kInSubquery);
          e->subquery = std::make_shared<SelectStmt>(select());
          e->args = {left};
          e->negated = negated;
          left = e;
        } else {
          auto e = make(Expr::Kind::kInList);
          e->args = {left};
          do e->args.push_back(expression());
          while (accept_symbol(","));
          e->negated = negated;
          left = e;
        }
        expect_symbol(")");
      } else if (accept_keyword("LIKE")) {
        auto e = make(Expr::Kind::kLike);
        e->args = {left, concatenation()};
        e->negated = negated;
        left = e;
      } else if (negated) {
        error("expected BETWEEN, IN or LIKE after NOT");
      } else if (accept_keyword("IS")) {
        auto e = make(Expr::Kind::kIsNull);
        e->negated = accept_keyword("NOT");
        expect_keyword("NULL");
        e->args = {left};
        left = e;
      } else {
        return left;
      }
    }
  }

  ExprPtr concatenation() {
    auto e = additive();
    while (accept_symbol("||")) e = binary("||", e, additive());
    return e;
  }

  ExprPtr additive() {
    auto e = multiplicative();
    for (;;) {
      if (accept_symbol("+")) {
        e = binary("+", e, multiplicative());
      } else if (accept_symbol("-")) {
        e = binary("-", e, multiplicative());
      } else {
        return e;
      }
    }
  }

  ExprPtr multiplicative() {
    auto e = unary();
    for (;;) {
      if (accept_symbol("*")) {
        e = binary("*", e, unary());
      } else if (accept_symbol("/")) {
        e = binary("/", e, unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (accept_symbol("-")) {
      auto operand = unary();
      if (operand->kind == Expr::Kind::kLiteral) {
        if (auto* i = std::get_if<std::int64_t>(&operand->literal)) {
          *i = -*i;
          return operand;
        }
        if (auto* d = std::get_if<Decimal>(&operand->literal)) {
          d->units = -d->units;
          return operand;
        }
      }
      auto e = make(Expr::Kind::kUnary);
      e->op = "-";
      e->args = {operand};
      return e;
    }
    accept_symbol("+");
    return primary();
  }

  ExprPtr primary() {
    const auto& t = peek();
    if (t.kind == Tok::kNumber) {
      auto e = make(Expr::Kind::kLiteral);
      e->literal = number_literal(take().text, t.pos);
      return e;
    }
    if (t.kind == Tok::kString) {
      auto e = make(Expr::Kind::kLiteral);
      e->literal = take().text;
      return e;
    }
    if (accept_symbol("*")) return make(Expr::Kind::kStar);
    if (accept_symbol("(")) {
      if (is_keyword("SELECT")) {
        auto e = make(Expr::Kind::kSubquery);
        e->subquery = std::make_shared<SelectStmt>(select());
        expect_symbol(")");
        return e;
      }
      auto e = expression();
      expect_symbol(")");
      return e;
    }
    if (t.kind == Tok::kSymbol && t.text == ":") {
      error(fmt::format("unbound placeholder ':{}'", peek(1).text));
    }
    if (t.kind != Tok::kIdent) error("expected expression");
    if (t.text == "NULL") {
      take();
      return make(Expr::Kind::kLiteral);
    }
    if (accept_keyword("EXISTS")) {
      expect_symbol("(");
      auto e = make(Expr::Kind::kExists);
      e->subquery = std::make_shared<SelectStmt>(select());
      expect_symbol(")");
      return e;
    }
    // DATE 'yyyy-mm-dd' literals are kept as their string form.
    if (t.text == "DATE" && peek(1).kind == Tok::kString) {
      take();
      auto e = make(Expr::Kind::kLiteral);
      e->literal = take().text;
      return e;
    }
    auto name = identifier();
    if (accept_symbol("(")) {
      auto e = make(Expr::Kind::kFunction);
      e->op = name;
      e->distinct = accept_keyword("DISTINCT");
      if (!accept_symbol(")")) {
        do e->args.push_back(expression());
        while (accept_symbol(","));
        expect_symbol(")");
      }
      return e;
    }
    auto e = make(Expr::Kind::kColumn);
    if (accept_symbol(".")) {
      e->qualifier = name;
      e->name = identifier();
    } else {
      e->name = name;
    }
    return e;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void collect_columns(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == Expr::Kind::kColumn) out.push_back(&e);
  for (const auto& a : e.args) {
    if (a) collect_columns(*a, out);
  }
}

void collect_selects(const SelectStmt& s, std::vector<const SelectStmt*>& out);

void collect_selects(const Expr& e, std::vector<const SelectStmt*>& out) {
  if (e.subquery) {
    out.push_back(e.subquery.get());
    collect_selects(*e.subquery, out);
  }
  for (const auto& a : e.args) {
    if (a) collect_selects(*a, out);
  }
}

void collect_selects(const SelectStmt& s, std::vector<const SelectStmt*>& out) {
  for (const auto& i : s.items) collect_selects(*i.expr, out);
  for (const auto& t : s.from) {
    if (t.derived) {
      out.push_back(t.derived.get());
      collect_selects(*t.derived, out);
    }
  }
  if (s.where) collect_selects(*s.where, out);
  for (const auto& g : s.group_by) collect_selects(*g, out);
  if (s.having) collect_selects(*s.having, out);
  for (const auto& o : s.order_by) collect_selects(*o.expr, out);
}

} // namespace

SelectStmt parse_select(std::string_view sql) { return Parser(sql).statement(); }

std::vector<ExprPtr> split_conjuncts(const ExprPtr& e) {
  std::vector<ExprPtr> out;
  if (!e) return out;
  if (e->kind == Expr::Kind::kBinary && e->op == "AND") {
    for (const auto& a : e->args) {
      auto sub = split_conjuncts(a);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else {
    out.push_back(e);
  }
  return out;
}

std::vector<const Expr*> column_refs(const Expr& e) {
  std::vector<const Expr*> out;
  collect_columns(e, out);
  return out;
}

bool contains_subquery(const Expr& e) {
  if (e.subquery) return true;
  for (const auto& a : e.args) {
    if (a && contains_subquery(*a)) return true;
  }
  return false;
}

bool is_aggregate_call(const Expr& e) {
  if (e.kind != Expr::Kind::kFunction) return false;
  return e.op == "SUM" || e.op == "COUNT" || e.op == "MIN" || e.op == "MAX" || e.op == "AVG";
}

bool contains_aggregate(const Expr& e) {
  if (is_aggregate_call(e)) return true;
  for (const auto& a : e.args) {
    if (a && contains_aggregate(*a)) return true;
  }
  return false;
}

std::vector<const SelectStmt*> nested_selects(const SelectStmt& stmt) {
  std::vector<const SelectStmt*> out;
  collect_selects(stmt, out);
  return out;
}

std::string to_sql(const Expr& e) {
  using K = Expr::Kind;
  auto arg = [&](std::size_t i) { return to_sql(*e.args[i]); };
  std::string neg = e.negated ? "NOT " : "";
  switch (e.kind) {
    case K::kColumn:
      return e.qualifier.empty() ? e.name : e.qualifier + "." + e.name;
    case K::kLiteral:
      if (std::holds_alternative<Null>(e.literal)) return "NULL";
      if (std::holds_alternative<std::string>(e.literal)) {
        std::string out = "'";
        for (char c : std::get<std::string>(e.literal)) {
          out += c;
          if (c == '\'') out += '\'';
        }
        return out + "'";
      }
      return render(e.literal);
    case K::kStar:
      return "*";
    case K::kBinary:
      return fmt::format("({} {} {})", arg(0), e.op, arg(1));
    case K::kUnary:
      return e.op == "NOT" ? "NOT " + arg(0) : "-" + arg(0);
    case K::kFunction: {
      std::vector<std::string> parts;
      for (std::size_t i = 0; i < e.args.size(); ++i) parts.push_back(arg(i));
      return fmt::format("{}({}{})", e.op, e.distinct ? "DISTINCT " : "", join(parts, ", "));
    }
    case K::kBetween:
      return fmt::format("{} {}BETWEEN {} AND {}", arg(0), neg, arg(1), arg(2));
    case K::kInList: {
      std::vector<std::string> parts;
      for (std::size_t i = 1; i < e.args.size(); ++i) parts.push_back(arg(i));
      return fmt::format("{} {}IN ({})", arg(0), neg, join(parts, ", "));
    }
    case K::kLike:
      return fmt::format("{} {}LIKE {}", arg(0), neg, arg(1));
    case K::kIsNull:
      return fmt::format("{} IS {}NULL", arg(0), neg);
    case K::kSubquery:
      return "(SELECT ...)";
    case K::kExists:
      return "EXISTS (SELECT ...)";
    case K::kInSubquery:
      return fmt::format("{} {}IN (SELECT ...)", arg(0), neg);
  }
  return {};
}

} // namespace ssbkit::workload

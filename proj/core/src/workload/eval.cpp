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

#include "ssbkit/workload/eval.hpp"

#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "ssbkit/common/error.hpp"

namespace ssbkit::workload {

namespace {

using i128 = __int128;

std::int64_t pow10(int n) {
  std::int64_t p = 1;
  while (n-- > 0) p *= 10;
  return p;
}

std::int64_t narrow(i128 v, std::string_view what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    fail(ErrorKind::kOverflow, fmt::format("integer overflow in {}", what));
  }
  return static_cast<std::int64_t>(v);
}

bool is_number(const Datum& d) {
  return std::holds_alternative<std::int64_t>(d) || std::holds_alternative<Decimal>(d) ||
         std::holds_alternative<double>(d);
}

double as_double(const Datum& d) {
  if (auto* i = std::get_if<std::int64_t>(&d)) return static_cast<double>(*i);
  if (auto* x = std::get_if<Decimal>(&d)) return x->to_double();
  if (auto* f = std::get_if<double>(&d)) return *f;
  return 0.0;
}

Decimal as_decimal(const Datum& d) {
  if (auto* i = std::get_if<std::int64_t>(&d)) return Decimal{*i, 0};
  return std::get<Decimal>(d);
}

i128 scaled(const Decimal& d, int scale) {
  return static_cast<i128>(d.units) * pow10(scale - d.scale);
}

template <typename T>
int sign(T v) {
  return (v > 0) - (v < 0);
}

} // namespace

Datum to_datum(const Value& v) {
  return std::visit(
      [](const auto& x) -> Datum {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Date>) {
          return x.to_string();
        } else {
          return x;
        }
      },
      v);
}

std::optional<int> compare(const Datum& a, const Datum& b) {
  if (std::holds_alternative<Null>(a) || std::holds_alternative<Null>(b)) return std::nullopt;
  bool na = is_number(a);
  bool nb = is_number(b);
  if (na && nb) {
    if (std::holds_alternative<double>(a) || std::holds_alternative<double>(b)) {
      double x = as_double(a);
      double y = as_double(b);
      return (x > y) - (x < y);
    }
    auto x = as_decimal(a);
    auto y = as_decimal(b);
    int s = std::max(x.scale, y.scale);
    return sign(scaled(x, s) - scaled(y, s));
  }
  if (na != nb) return na ? -1 : 1;
  const auto& x = std::get<std::string>(a);
  const auto& y = std::get<std::string>(b);
  return sign(x.compare(y));
}

Datum arithmetic(std::string_view op, const Datum& a, const Datum& b) {
  if (std::holds_alternative<Null>(a) || std::holds_alternative<Null>(b)) return Null{};
  if (op == "||") {
    return canonical(a) + canonical(b);
  }
  if (!is_number(a) || !is_number(b)) {
    fail(ErrorKind::kInvalidArgument, fmt::format("operator {} needs numeric operands", op));
  }
  if (std::holds_alternative<double>(a) || std::holds_alternative<double>(b) ||
      (op == "/" && !(std::holds_alternative<std::int64_t>(a) && std::holds_alternative<std::int64_t>(b)))) {
    double x = as_double(a);
    double y = as_double(b);
    if (op == "+") return x + y;
    if (op == "-") return x - y;
    if (op == "*") return x * y;
    if (y == 0.0) return Null{};
    return x / y;
  }
  if (std::holds_alternative<std::int64_t>(a) && std::holds_alternative<std::int64_t>(b)) {
    i128 x = std::get<std::int64_t>(a);
    i128 y = std::get<std::int64_t>(b);
    if (op == "+") return narrow(x + y, "addition");
    if (op == "-") return narrow(x - y, "subtraction");
    if (op == "*") return narrow(x * y, "multiplication");
    if (y == 0) return Null{};
    return narrow(x / y, "division");
  }
  auto x = as_decimal(a);
  auto y = as_decimal(b);
  if (op == "*") {
    return Decimal{narrow(static_cast<i128>(x.units) * y.units, "multiplication"), x.scale + y.scale};
  }
  int s = std::max(x.scale, y.scale);
  i128 r = op == "+" ? scaled(x, s) + scaled(y, s) : scaled(x, s) - scaled(y, s);
  return Decimal{narrow(r, op == "+" ? "addition" : "subtraction"), s};
}

std::string canonical(const Datum& d) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Null>) {
          return "NULL";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, Decimal>) {
          return x.rescaled(2).to_string();
        } else if constexpr (std::is_same_v<T, double>) {
          // Snap to micro-units first so binary noise does not decide a
          // half-cent tie differently from exact decimal arithmetic.
          std::string s = std::abs(x) < 1e12 ? Decimal::parse(fmt::format("{:.6f}", x), 6).rescaled(2).to_string()
                                              : fmt::format("{:.2f}", x);
          return s == "-0.00" ? "0.00" : s;
        } else {
          return x;
        }
      },
      d);
}

bool like_match(std::string_view text, std::string_view pattern) {
  // Iterative wildcard match with backtracking on the last '%'.
  std::size_t t = 0, p = 0, star = std::string_view::npos, mark = 0;
  auto eq = [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
  };
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '_' || (pattern[p] != '%' && eq(pattern[p], text[t])))) {
      ++t;
      ++p;
    } else if (p < pattern.size() && pattern[p] == '%') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '%') ++p;
  return p == pattern.size();
}

Datum RowAccessor::aggregate(int) const {
  fail(ErrorKind::kInvalidArgument, "aggregate used outside a grouped context");
}

ExprPtr clone(const ExprPtr& e) {
  if (!e) return nullptr;
  auto c = std::make_shared<Expr>(*e);
  for (auto& a : c->args) a = clone(a);
  return c;
}

void bind_columns(Expr& e, const std::function<int(const Expr&)>& resolve) {
  if (e.kind == Expr::Kind::kColumn) e.slot = resolve(e);
  for (auto& a : e.args) {
    if (a) bind_columns(*a, resolve);
  }
}

bool is_true(const Datum& d) {
  if (std::holds_alternative<Null>(d)) return false;
  if (auto* i = std::get_if<std::int64_t>(&d)) return *i != 0;
  if (auto* x = std::get_if<Decimal>(&d)) return x->units != 0;
  if (auto* f = std::get_if<double>(&d)) return *f != 0.0;
  return false;
}

Datum evaluate(const Expr& e, const RowAccessor& row) {
  using K = Expr::Kind;
  auto truth = [](std::optional<bool> b) -> Datum {
    if (!b) return Null{};
    return std::int64_t{*b ? 1 : 0};
  };
  switch (e.kind) {
    case K::kColumn:
      if (e.slot < 0) fail(ErrorKind::kInvalidArgument, fmt::format("unbound column {}", to_sql(e)));
      return row.column(e.slot);
    case K::kLiteral:
      return to_datum(e.literal);
    case K::kBinary: {
      if (e.op == "AND" || e.op == "OR") {
        auto a = evaluate(*e.args[0], row);
        bool is_and = e.op == "AND";
        if (!std::holds_alternative<Null>(a) && is_true(a) != is_and) return truth(!is_and);
        auto b = evaluate(*e.args[1], row);
        if (!std::holds_alternative<Null>(b) && is_true(b) != is_and) return truth(!is_and);
        if (std::holds_alternative<Null>(a) || std::holds_alternative<Null>(b)) return Null{};
        return truth(is_and);
      }
      auto a = evaluate(*e.args[0], row);
      auto b = evaluate(*e.args[1], row);
      if (e.op == "+" || e.op == "-" || e.op == "*" || e.op == "/" || e.op == "||") {
        return arithmetic(e.op, a, b);
      }
      auto c = compare(a, b);
      if (!c) return Null{};
      if (e.op == "=") return truth(*c == 0);
      if (e.op == "<>") return truth(*c != 0);
      if (e.op == "<") return truth(*c < 0);
      if (e.op == "<=") return truth(*c <= 0);
      if (e.op == ">") return truth(*c > 0);
      if (e.op == ">=") return truth(*c >= 0);
      fail(ErrorKind::kInvalidArgument, fmt::format("unsupported operator {}", e.op));
    }
    case K::kUnary: {
      auto a = evaluate(*e.args[0], row);
      if (std::holds_alternative<Null>(a)) return Null{};
      if (e.op == "NOT") return truth(!is_true(a));
      return arithmetic("-", std::int64_t{0}, a);
    }
    case K::kBetween: {
      auto v = evaluate(*e.args[0], row);
      auto lo = compare(v, evaluate(*e.args[1], row));
      auto hi = compare(v, evaluate(*e.args[2], row));
      if (!lo || !hi) return Null{};
      bool in = *lo >= 0 && *hi <= 0;
      return truth(in != e.negated);
    }
    case K::kInList: {
      auto v = evaluate(*e.args[0], row);
      if (std::holds_alternative<Null>(v)) return Null{};
      bool found = false;
      for (std::size_t i = 1; i < e.args.size() && !found; ++i) {
        auto c = compare(v, evaluate(*e.args[i], row));
        found = c && *c == 0;
      }
      return truth(found != e.negated);
    }
    case K::kLike: {
      auto v = evaluate(*e.args[0], row);
      auto p = evaluate(*e.args[1], row);
      if (std::holds_alternative<Null>(v) || std::holds_alternative<Null>(p)) return Null{};
      return truth(like_match(canonical(v), canonical(p)) != e.negated);
    }
    case K::kIsNull: {
      bool null = std::holds_alternative<Null>(evaluate(*e.args[0], row));
      return truth(null != e.negated);
    }
    case K::kFunction:
      if (is_aggregate_call(e)) return row.aggregate(e.slot);
      if (e.op == "ABS" && e.args.size() == 1) {
        auto a = evaluate(*e.args[0], row);
        auto c = compare(a, std::int64_t{0});
        if (!c) return Null{};
        return *c < 0 ? arithmetic("-", std::int64_t{0}, a) : a;
      }
      fail(ErrorKind::kInvalidArgument, fmt::format("unsupported function {}", e.op));
    case K::kStar:
    case K::kSubquery:
    case K::kExists:
    case K::kInSubquery:
      break;
  }
  fail(ErrorKind::kInvalidArgument, fmt::format("cannot evaluate {}", to_sql(e)));
}

} // namespace ssbkit::workload

#include "jacobikit/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>

#include "jacobikit/errors.hpp"

namespace jacobikit {

namespace {

Expr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

ChartPtr common_chart(const std::vector<Expr>& es) {
  ChartPtr chart;
  for (const auto& e : es) {
    if (!e) throw Error("null expression");
    if (!chart) {
      chart = e->chart;
    } else if (!same_chart(chart, e->chart)) {
      throw ChartMismatchError("expressions live on different charts");
    }
  }
  return chart;
}

bool constant_value(const Expr& e, Rational& out) {
  if (e->kind != ExprKind::Constant) return false;
  out = e->value;
  return true;
}

}  // namespace

bool is_constant(const Expr& e) { return e && e->kind == ExprKind::Constant; }

bool is_constant_value(const Expr& e, const Rational& v) {
  return e && e->kind == ExprKind::Constant && e->value == v;
}

Expr make_constant(ChartPtr chart, Rational value) {
  if (!chart) throw Error("constant requires a chart");
  ExprNode n;
  n.kind = ExprKind::Constant;
  n.chart = std::move(chart);
  n.value = std::move(value);
  return node(std::move(n));
}

Expr make_coordinate(ChartPtr chart, int index) {
  if (!chart) throw Error("coordinate requires a chart");
  if (index < 0 || index >= chart->dim()) {
    throw Error("coordinate index " + std::to_string(index) + " out of range for chart of dimension " +
                std::to_string(chart->dim()));
  }
  ExprNode n;
  n.kind = ExprKind::Coordinate;
  n.chart = std::move(chart);
  n.coord = index;
  return node(std::move(n));
}

Expr make_sum(std::vector<Expr> terms) {
  ChartPtr chart = common_chart(terms);
  std::vector<Expr> flat;
  Rational c(0);
  for (auto& t : terms) {
    if (t->kind == ExprKind::Sum) {
      for (const auto& k : t->kids) {
        Rational v;
        if (constant_value(k, v)) {
          c += v;
        } else {
          flat.push_back(k);
        }
      }
    } else {
      Rational v;
      if (constant_value(t, v)) {
        c += v;
      } else {
        flat.push_back(std::move(t));
      }
    }
  }
  if (!chart) throw Error("empty sum");
  if (c != 0) flat.push_back(make_constant(chart, c));
  if (flat.empty()) return make_constant(chart, Rational(0));
  if (flat.size() == 1) return flat.front();
  ExprNode n;
  n.kind = ExprKind::Sum;
  n.chart = chart;
  n.kids = std::move(flat);
  return node(std::move(n));
}

Expr make_product(std::vector<Expr> factors) {
  ChartPtr chart = common_chart(factors);
  std::vector<Expr> flat;
  Rational c(1);
  for (auto& f : factors) {
    if (f->kind == ExprKind::Product) {
      for (const auto& k : f->kids) {
        Rational v;
        if (constant_value(k, v)) {
          c *= v;
        } else {
          flat.push_back(k);
        }
      }
    } else {
      Rational v;
      if (constant_value(f, v)) {
        c *= v;
      } else {
        flat.push_back(std::move(f));
      }
    }
  }
  if (!chart) throw Error("empty product");
  if (c == 0) return make_constant(chart, Rational(0));
  if (flat.empty()) return make_constant(chart, c);
  if (c != 1) flat.insert(flat.begin(), make_constant(chart, c));
  if (flat.size() == 1) return flat.front();
  ExprNode n;
  n.kind = ExprKind::Product;
  n.chart = chart;
  n.kids = std::move(flat);
  return node(std::move(n));
}

Expr make_power(Expr base, long exponent) {
  if (!base) throw Error("null expression");
  if (exponent == 0) return make_constant(base->chart, Rational(1));
  if (exponent == 1) return base;
  Rational v;
  if (constant_value(base, v)) {
    if (v == 0 && exponent < 0) throw Error("zero raised to a negative power");
    Rational r(1);
    const bool inv = exponent < 0;
    for (long i = 0; i < (inv ? -exponent : exponent); ++i) r *= v;
    return make_constant(base->chart, inv ? Rational(1) / r : r);
  }
  if (base->kind == ExprKind::Power) {
    return make_power(base->kids.front(), base->exponent * exponent);
  }
  ExprNode n;
  n.kind = ExprKind::Power;
  n.chart = base->chart;
  n.exponent = exponent;
  n.kids = {std::move(base)};
  return node(std::move(n));
}

Expr make_quotient(Expr num, Expr den) {
  if (!num || !den) throw Error("null expression");
  if (!same_chart(num->chart, den->chart)) {
    throw ChartMismatchError("expressions live on different charts");
  }
  Rational v;
  if (constant_value(den, v)) {
    if (v == 0) throw Error("division by constant zero");
    return scale(Rational(1) / v, std::move(num));
  }
  if (constant_value(num, v) && v == 0) return num;
  ExprNode n;
  n.kind = ExprKind::Quotient;
  n.chart = num->chart;
  n.kids = {std::move(num), std::move(den)};
  return node(std::move(n));
}

Expr make_call(UnaryFn fn, Expr arg) {
  if (!arg) throw Error("null expression");
  Rational v;
  if (constant_value(arg, v)) {
    if (fn == UnaryFn::Exp && v == 0) return make_constant(arg->chart, Rational(1));
    if (fn == UnaryFn::Log && v == 1) return make_constant(arg->chart, Rational(0));
    if (fn == UnaryFn::Sin && v == 0) return make_constant(arg->chart, Rational(0));
    if (fn == UnaryFn::Cos && v == 0) return make_constant(arg->chart, Rational(1));
  }
  ExprNode n;
  n.kind = ExprKind::Call;
  n.chart = arg->chart;
  n.fn = fn;
  n.kids = {std::move(arg)};
  return node(std::move(n));
}

Expr add(Expr a, Expr b) { return make_sum({std::move(a), std::move(b)}); }

Expr sub(Expr a, Expr b) { return add(std::move(a), negate(std::move(b))); }

Expr mul(Expr a, Expr b) { return make_product({std::move(a), std::move(b)}); }

Expr negate(Expr a) { return scale(Rational(-1), std::move(a)); }

Expr scale(const Rational& c, Expr a) {
  if (!a) throw Error("null expression");
  return make_product({make_constant(a->chart, c), std::move(a)});
}

// ---------------------------------------------------------------------------
// Printing. Precedence: sum < product/quotient < power < atom; negative
// constants print at sum level so they get parenthesized inside products.

namespace {

int precedence(const ExprNode& e) {
  switch (e.kind) {
    case ExprKind::Sum:
      return 1;
    case ExprKind::Product:
    case ExprKind::Quotient:
      return 2;
    case ExprKind::Power:
      return 3;
    case ExprKind::Constant:
      if (e.value < 0) return 1;
      if (boost::multiprecision::denominator(e.value) != 1) return 2;
      return 4;
    case ExprKind::Coordinate:
    case ExprKind::Call:
      return 4;
  }
  return 4;
}

bool leading_minus(const Expr& e) {
  if (e->kind == ExprKind::Constant) return e->value < 0;
  if (e->kind == ExprKind::Product) {
    const Expr& first = e->kids.front();
    return first->kind == ExprKind::Constant && first->value < 0;
  }
  return false;
}

void print(std::ostream& os, const Expr& e, int parent_prec);

void print_body(std::ostream& os, const Expr& e) {
  switch (e->kind) {
    case ExprKind::Constant:
      os << rational_to_string(e->value);
      break;
    case ExprKind::Coordinate:
      os << e->chart->name(e->coord);
      break;
    case ExprKind::Sum:
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        const Expr& t = e->kids[i];
        if (i == 0) {
          print(os, t, 1);
        } else if (leading_minus(t)) {
          os << " - ";
          print(os, negate(t), 2);
        } else {
          os << " + ";
          print(os, t, 2);
        }
      }
      break;
    case ExprKind::Product: {
      std::size_t start = 0;
      const Expr& first = e->kids.front();
      if (first->kind == ExprKind::Constant && first->value < 0) {
        os << "-";
        if (first->value != -1) {
          print(os, make_constant(e->chart, -first->value), 3);
          os << "*";
        }
        start = 1;
      }
      for (std::size_t i = start; i < e->kids.size(); ++i) {
        if (i > start) os << "*";
        print(os, e->kids[i], 3);
      }
      break;
    }
    case ExprKind::Power:
      print(os, e->kids.front(), 4);
      os << "^" << e->exponent;
      break;
    case ExprKind::Quotient:
      print(os, e->kids[0], 2);
      os << "/";
      print(os, e->kids[1], 4);
      break;
    case ExprKind::Call: {
      const char* name = "exp";
      switch (e->fn) {
        case UnaryFn::Exp: name = "exp"; break;
        case UnaryFn::Log: name = "log"; break;
        case UnaryFn::Sin: name = "sin"; break;
        case UnaryFn::Cos: name = "cos"; break;
      }
      os << name << "(";
      print(os, e->kids.front(), 0);
      os << ")";
      break;
    }
  }
}

void print(std::ostream& os, const Expr& e, int parent_prec) {
  const bool parens = precedence(*e) < parent_prec;
  if (parens) os << "(";
  print_body(os, e);
  if (parens) os << ")";
}

}  // namespace

std::string to_string(const Expr& e) {
  if (!e) return "<null>";
  std::ostringstream os;
  print(os, e, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing. Infix grammar with precedence ^ > unary - > * / > + -,
// parenthesized subexpressions, call syntax for exp/log/sin/cos,
// rational and decimal literals, identifiers bound to chart names.
// Exponents must be (optionally signed) integer literals.

namespace {

class Parser {
public:
  Parser(std::string_view text, ChartPtr chart) : text_(text), chart_(std::move(chart)) {}

  Expr run() {
    Expr e = expression();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected input", pos_);
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expression() {
    Expr e = term();
    for (;;) {
      if (consume('+')) {
        e = add(e, term());
      } else if (consume('-')) {
        e = sub(e, term());
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (consume('*')) {
        e = mul(e, factor());
      } else if (consume('/')) {
        e = make_quotient(e, factor());
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    if (consume('-')) return negate(factor());
    return power();
  }

  Expr power() {
    Expr e = atom();
    while (consume('^')) e = make_power(e, exponent());
    return e;
  }

  long exponent() {
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("expected integer exponent", pos_);
    }
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      throw ParseError("exponent must be an integer", pos_);
    }
    return neg ? -v : v;
  }

  Expr atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      if (!consume(')')) throw ParseError("expected `)`", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError("expected expression", pos_);
  }

  Expr number() {
    const std::size_t start = pos_;
    BigInt mantissa = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      mantissa = mantissa * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    long frac_digits = 0;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("expected digits after decimal point", pos_);
      }
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        mantissa = mantissa * 10 + (text_[pos_] - '0');
        ++frac_digits;
        ++pos_;
      }
    }
    long exp10 = 0;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      bool neg = false;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        neg = text_[pos_] == '-';
        ++pos_;
      }
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        // Not an exponent suffix after all (e.g. a coordinate named `e1`
        // following a literal would be a syntax error anyway).
        pos_ = mark;
      } else {
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          v = v * 10 + (text_[pos_] - '0');
          ++pos_;
        }
        exp10 = neg ? -v : v;
      }
    }
    (void)start;
    BigInt num = mantissa;
    BigInt den = 1;
    long shift = exp10 - frac_digits;
    for (long i = 0; i < shift; ++i) num *= 10;
    for (long i = 0; i < -shift; ++i) den *= 10;
    return make_constant(chart_, Rational(num, den));
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (peek() == '(') {
      UnaryFn fn;
      bool is_fn = true;
      if (name == "exp") {
        fn = UnaryFn::Exp;
      } else if (name == "log") {
        fn = UnaryFn::Log;
      } else if (name == "sin") {
        fn = UnaryFn::Sin;
      } else if (name == "cos") {
        fn = UnaryFn::Cos;
      } else {
        is_fn = false;
      }
      if (is_fn) {
        ++pos_;  // '('
        Expr arg = expression();
        if (!consume(')')) throw ParseError("expected `)`", pos_);
        return make_call(fn, arg);
      }
    }
    if (auto idx = chart_->index_of(name)) return make_coordinate(chart_, *idx);
    throw ParseError("unknown coordinate name `" + name + "`", start);
  }

  std::string_view text_;
  ChartPtr chart_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, ChartPtr chart) {
  if (!chart) throw Error("parse requires a chart");
  return Parser(text, std::move(chart)).run();
}

// ---------------------------------------------------------------------------

Expr differentiate(const Expr& e, int index) {
  if (!e) throw Error("null expression");
  if (index < 0 || index >= e->chart->dim()) {
    throw Error("derivative index " + std::to_string(index) + " out of range");
  }
  const ChartPtr& chart = e->chart;
  switch (e->kind) {
    case ExprKind::Constant:
      return make_constant(chart, Rational(0));
    case ExprKind::Coordinate:
      return make_constant(chart, Rational(e->coord == index ? 1 : 0));
    case ExprKind::Sum: {
      std::vector<Expr> parts;
      parts.reserve(e->kids.size());
      for (const auto& k : e->kids) parts.push_back(differentiate(k, index));
      return make_sum(std::move(parts));
    }
    case ExprKind::Product: {
      std::vector<Expr> parts;
      for (std::size_t a = 0; a < e->kids.size(); ++a) {
        std::vector<Expr> factors;
        factors.reserve(e->kids.size());
        for (std::size_t b = 0; b < e->kids.size(); ++b) {
          factors.push_back(b == a ? differentiate(e->kids[b], index) : e->kids[b]);
        }
        parts.push_back(make_product(std::move(factors)));
      }
      return make_sum(std::move(parts));
    }
    case ExprKind::Power: {
      const Expr& base = e->kids.front();
      Expr db = differentiate(base, index);
      return scale(Rational(e->exponent), mul(make_power(base, e->exponent - 1), std::move(db)));
    }
    case ExprKind::Quotient: {
      const Expr& a = e->kids[0];
      const Expr& b = e->kids[1];
      Expr da = differentiate(a, index);
      Expr db = differentiate(b, index);
      return make_quotient(sub(mul(std::move(da), b), mul(a, std::move(db))), make_power(b, 2));
    }
    case ExprKind::Call: {
      const Expr& arg = e->kids.front();
      Expr da = differentiate(arg, index);
      switch (e->fn) {
        case UnaryFn::Exp:
          return mul(e, std::move(da));
        case UnaryFn::Log:
          return make_quotient(std::move(da), arg);
        case UnaryFn::Sin:
          return mul(make_call(UnaryFn::Cos, arg), std::move(da));
        case UnaryFn::Cos:
          return negate(mul(make_call(UnaryFn::Sin, arg), std::move(da)));
      }
      break;
    }
  }
  throw Error("unreachable expression kind");
}

// ---------------------------------------------------------------------------

namespace {

double eval_node(const Expr& e, std::span<const double> pt, double* max_abs) {
  double v = 0.0;
  switch (e->kind) {
    case ExprKind::Constant:
      v = rational_to_double(e->value);
      break;
    case ExprKind::Coordinate:
      v = pt[static_cast<std::size_t>(e->coord)];
      break;
    case ExprKind::Sum:
      for (const auto& k : e->kids) v += eval_node(k, pt, max_abs);
      break;
    case ExprKind::Product:
      v = 1.0;
      for (const auto& k : e->kids) v *= eval_node(k, pt, max_abs);
      break;
    case ExprKind::Power: {
      const double b = eval_node(e->kids.front(), pt, max_abs);
      if (b == 0.0 && e->exponent < 0) throw DomainError("division by zero", to_string(e));
      v = std::pow(b, static_cast<double>(e->exponent));
      break;
    }
    case ExprKind::Quotient: {
      const double num = eval_node(e->kids[0], pt, max_abs);
      const double den = eval_node(e->kids[1], pt, max_abs);
      if (den == 0.0) throw DomainError("division by zero", to_string(e));
      v = num / den;
      break;
    }
    case ExprKind::Call: {
      const double a = eval_node(e->kids.front(), pt, max_abs);
      switch (e->fn) {
        case UnaryFn::Exp: v = std::exp(a); break;
        case UnaryFn::Log:
          if (a <= 0.0) throw DomainError("log of non-positive value", to_string(e));
          v = std::log(a);
          break;
        case UnaryFn::Sin: v = std::sin(a); break;
        case UnaryFn::Cos: v = std::cos(a); break;
      }
      break;
    }
  }
  if (max_abs) {
    const double m = std::abs(v);
    if (m > *max_abs) *max_abs = m;
  }
  return v;
}

}  // namespace

double evaluate(const Expr& e, std::span<const double> point) {
  if (!e) throw Error("null expression");
  if (static_cast<int>(point.size()) != e->chart->dim()) {
    throw Error("point dimension does not match chart");
  }
  return eval_node(e, point, nullptr);
}

double evaluate_tracked(const Expr& e, std::span<const double> point, double& max_abs) {
  if (!e) throw Error("null expression");
  if (static_cast<int>(point.size()) != e->chart->dim()) {
    throw Error("point dimension does not match chart");
  }
  return eval_node(e, point, &max_abs);
}

// ---------------------------------------------------------------------------

Expr substitute(const Expr& e, const std::vector<Expr>& images) {
  if (!e) throw Error("null expression");
  if (static_cast<int>(images.size()) != e->chart->dim()) {
    throw Error("substitution image count does not match chart dimension");
  }
  const ChartPtr target = common_chart(images);
  switch (e->kind) {
    case ExprKind::Constant:
      return make_constant(target, e->value);
    case ExprKind::Coordinate:
      return images[static_cast<std::size_t>(e->coord)];
    case ExprKind::Sum: {
      std::vector<Expr> parts;
      parts.reserve(e->kids.size());
      for (const auto& k : e->kids) parts.push_back(substitute(k, images));
      return make_sum(std::move(parts));
    }
    case ExprKind::Product: {
      std::vector<Expr> parts;
      parts.reserve(e->kids.size());
      for (const auto& k : e->kids) parts.push_back(substitute(k, images));
      return make_product(std::move(parts));
    }
    case ExprKind::Power:
      return make_power(substitute(e->kids.front(), images), e->exponent);
    case ExprKind::Quotient:
      return make_quotient(substitute(e->kids[0], images), substitute(e->kids[1], images));
    case ExprKind::Call:
      return make_call(e->fn, substitute(e->kids.front(), images));
  }
  throw Error("unreachable expression kind");
}

}  // namespace jacobikit

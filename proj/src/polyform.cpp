#include "jacobikit/polyform.hpp"

#include <algorithm>

#include "jacobikit/errors.hpp"

namespace jacobikit {

PolyForm PolyForm::constant(int dim, const Rational& c) {
  PolyForm p(dim);
  if (c != 0) p.terms_.emplace(Monomial(static_cast<std::size_t>(dim), 0), c);
  return p;
}

PolyForm PolyForm::coordinate(int dim, int index) {
  PolyForm p(dim);
  Monomial m(static_cast<std::size_t>(dim), 0);
  m[static_cast<std::size_t>(index)] = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

std::optional<Rational> PolyForm::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() != 1) return std::nullopt;
  const auto& [mono, coeff] = *terms_.begin();
  for (auto e : mono) {
    if (e != 0) return std::nullopt;
  }
  return coeff;
}

void PolyForm::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PolyForm operator*(const PolyForm& a, const PolyForm& b) {
  PolyForm out(a.dim_);
  PolyForm::Monomial m(static_cast<std::size_t>(a.dim_));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

PolyForm PolyForm::pow(unsigned k) const {
  PolyForm acc = PolyForm::constant(dim_, Rational(1));
  for (unsigned i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

PolyForm PolyForm::scaled(const Rational& c) const {
  PolyForm out(dim_);
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

Expr PolyForm::to_expr(const ChartPtr& chart) const {
  std::vector<Expr> terms;
  terms.reserve(terms_.size());
  for (const auto& [mono, coeff] : terms_) {
    std::vector<Expr> factors;
    factors.push_back(make_constant(chart, coeff));
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      factors.push_back(make_power(make_coordinate(chart, static_cast<int>(i)),
                                   static_cast<long>(mono[i])));
    }
    terms.push_back(make_product(std::move(factors)));
  }
  if (terms.empty()) return make_constant(chart, Rational(0));
  return make_sum(std::move(terms));
}

std::optional<PolyForm> poly_normalize(const Expr& e) {
  if (!e) throw Error("null expression");
  const int n = e->chart->dim();
  switch (e->kind) {
    case ExprKind::Constant:
      return PolyForm::constant(n, e->value);
    case ExprKind::Coordinate:
      return PolyForm::coordinate(n, e->coord);
    case ExprKind::Sum: {
      PolyForm acc(n);
      for (const auto& k : e->kids) {
        auto p = poly_normalize(k);
        if (!p) return std::nullopt;
        acc += *p;
      }
      return acc;
    }
    case ExprKind::Product: {
      PolyForm acc = PolyForm::constant(n, Rational(1));
      for (const auto& k : e->kids) {
        auto p = poly_normalize(k);
        if (!p) return std::nullopt;
        acc = acc * *p;
      }
      return acc;
    }
    case ExprKind::Power: {
      auto base = poly_normalize(e->kids.front());
      if (!base) return std::nullopt;
      if (e->exponent >= 0) return base->pow(static_cast<unsigned>(e->exponent));
      // Negative power is polynomial only over a nonzero constant.
      auto c = base->as_constant();
      if (!c || *c == 0) return std::nullopt;
      Rational r(1);
      for (long i = 0; i < -e->exponent; ++i) r *= *c;
      return PolyForm::constant(n, Rational(1) / r);
    }
    case ExprKind::Quotient: {
      auto den = poly_normalize(e->kids[1]);
      if (!den) return std::nullopt;
      auto c = den->as_constant();
      if (!c || *c == 0) return std::nullopt;
      auto num = poly_normalize(e->kids[0]);
      if (!num) return std::nullopt;
      return num->scaled(Rational(1) / *c);
    }
    case ExprKind::Call:
      return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

void ExpPolyForm::add_part(long k, const PolyForm& p) {
  if (p.is_zero()) return;
  auto it = parts_.find(k);
  if (it == parts_.end()) {
    parts_.emplace(k, p);
  } else {
    it->second += p;
    if (it->second.is_zero()) parts_.erase(it);
  }
}

ExpPolyForm& ExpPolyForm::operator+=(const ExpPolyForm& o) {
  for (const auto& [k, p] : o.parts_) add_part(k, p);
  return *this;
}

ExpPolyForm operator*(const ExpPolyForm& a, const ExpPolyForm& b) {
  ExpPolyForm out(a.dim_, a.exp_coord_);
  for (const auto& [ka, pa] : a.parts_) {
    for (const auto& [kb, pb] : b.parts_) {
      out.add_part(ka + kb, pa * pb);
    }
  }
  return out;
}

ExpPolyForm ExpPolyForm::pow(unsigned k) const {
  ExpPolyForm acc(dim_, exp_coord_);
  acc.add_part(0, PolyForm::constant(dim_, Rational(1)));
  for (unsigned i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

ExpPolyForm ExpPolyForm::scaled(const Rational& c) const {
  ExpPolyForm out(dim_, exp_coord_);
  if (c == 0) return out;
  for (const auto& [k, p] : parts_) out.parts_.emplace(k, p.scaled(c));
  return out;
}

Expr ExpPolyForm::to_expr(const ChartPtr& chart) const {
  std::vector<Expr> terms;
  for (const auto& [k, p] : parts_) {
    Expr body = p.to_expr(chart);
    if (k != 0) {
      Expr arg = scale(Rational(k), make_coordinate(chart, exp_coord_));
      body = mul(make_call(UnaryFn::Exp, std::move(arg)), std::move(body));
    }
    terms.push_back(std::move(body));
  }
  if (terms.empty()) return make_constant(chart, Rational(0));
  return make_sum(std::move(terms));
}

namespace {

// exp argument must normalize to an integer multiple of the
// designated coordinate (possibly zero).
std::optional<long> integer_multiple_of(const PolyForm& p, int coord) {
  if (p.is_zero()) return 0;
  if (p.terms().size() != 1) return std::nullopt;
  const auto& [mono, coeff] = *p.terms().begin();
  for (std::size_t i = 0; i < mono.size(); ++i) {
    const bool is_coord = static_cast<int>(i) == coord;
    if (mono[i] != (is_coord ? 1u : 0u)) return std::nullopt;
  }
  if (boost::multiprecision::denominator(coeff) != 1) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(coeff);
  if (num > 1000000 || num < -1000000) return std::nullopt;
  return num.convert_to<long>();
}

}  // namespace

std::optional<ExpPolyForm> exp_poly_normalize(const Expr& e, int exp_coord) {
  if (!e) throw Error("null expression");
  const int n = e->chart->dim();
  switch (e->kind) {
    case ExprKind::Constant:
    case ExprKind::Coordinate: {
      auto p = poly_normalize(e);
      ExpPolyForm out(n, exp_coord);
      out.add_part(0, *p);
      return out;
    }
    case ExprKind::Sum: {
      ExpPolyForm acc(n, exp_coord);
      for (const auto& k : e->kids) {
        auto p = exp_poly_normalize(k, exp_coord);
        if (!p) return std::nullopt;
        acc += *p;
      }
      return acc;
    }
    case ExprKind::Product: {
      ExpPolyForm acc(n, exp_coord);
      acc.add_part(0, PolyForm::constant(n, Rational(1)));
      for (const auto& k : e->kids) {
        auto p = exp_poly_normalize(k, exp_coord);
        if (!p) return std::nullopt;
        acc = acc * *p;
      }
      return acc;
    }
    case ExprKind::Power: {
      auto base = exp_poly_normalize(e->kids.front(), exp_coord);
      if (!base) return std::nullopt;
      if (e->exponent >= 0) return base->pow(static_cast<unsigned>(e->exponent));
      // Negative powers only of a single exponential monomial with
      // constant polynomial part: (c e^{kt})^-m = c^-m e^{-kmt}.
      if (base->parts().size() != 1) return std::nullopt;
      const auto& [k, p] = *base->parts().begin();
      auto c = p.as_constant();
      if (!c || *c == 0) return std::nullopt;
      Rational r(1);
      for (long i = 0; i < -e->exponent; ++i) r *= *c;
      ExpPolyForm out(n, exp_coord);
      out.add_part(k * e->exponent, PolyForm::constant(n, Rational(1) / r));
      return out;
    }
    case ExprKind::Quotient: {
      auto den = exp_poly_normalize(e->kids[1], exp_coord);
      if (!den || den->parts().size() != 1) return std::nullopt;
      const auto& [k, p] = *den->parts().begin();
      auto c = p.as_constant();
      if (!c || *c == 0) return std::nullopt;
      auto num = exp_poly_normalize(e->kids[0], exp_coord);
      if (!num) return std::nullopt;
      ExpPolyForm shift(n, exp_coord);
      shift.add_part(-k, PolyForm::constant(n, Rational(1) / *c));
      return *num * shift;
    }
    case ExprKind::Call: {
      if (e->fn != UnaryFn::Exp) return std::nullopt;
      auto arg = poly_normalize(e->kids.front());
      if (!arg) return std::nullopt;
      auto k = integer_multiple_of(*arg, exp_coord);
      if (!k) return std::nullopt;
      ExpPolyForm out(n, exp_coord);
      out.add_part(*k, PolyForm::constant(n, Rational(1)));
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace jacobikit

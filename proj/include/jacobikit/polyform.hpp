#ifndef JACOBIKIT_POLYFORM_HPP
#define JACOBIKIT_POLYFORM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "jacobikit/expr.hpp"

namespace jacobikit {

// Canonical form of a multivariate polynomial with rational
// coefficients: exponent multi-index -> nonzero coefficient. Two
// PolyForms are equal iff the maps are equal, which is what makes the
// exact zero-check an empty-map test.
class PolyForm {
public:
  using Monomial = std::vector<std::uint32_t>;  // length = chart dimension

  explicit PolyForm(int dim) : dim_(dim) {}
  static PolyForm constant(int dim, const Rational& c);
  static PolyForm coordinate(int dim, int index);

  int dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }

  // Constant value if the polynomial has no non-constant term.
  std::optional<Rational> as_constant() const;

  void add_term(const Monomial& m, const Rational& c);

  PolyForm& operator+=(const PolyForm& o);
  PolyForm& operator-=(const PolyForm& o);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(const PolyForm& a, const PolyForm& b);
  PolyForm pow(unsigned k) const;
  PolyForm scaled(const Rational& c) const;

  friend bool operator==(const PolyForm& a, const PolyForm& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  // Expanded canonical expression: terms in map order.
  Expr to_expr(const ChartPtr& chart) const;

private:
  int dim_;
  std::map<Monomial, Rational> terms_;
};

// Canonical polynomial form of `e`, or nullopt if `e` leaves the
// polynomial fragment (transcendental call, negative power of a
// non-constant, quotient by a non-constant).
std::optional<PolyForm> poly_normalize(const Expr& e);

// Semi-canonical form sum_k exp(k * x_j) * P_k(x) for a designated
// coordinate j. Recovers exactness for coefficients that carry a
// global exponential prefactor.
class ExpPolyForm {
public:
  ExpPolyForm(int dim, int exp_coord) : dim_(dim), exp_coord_(exp_coord) {}

  int exp_coord() const noexcept { return exp_coord_; }
  bool is_zero() const noexcept { return parts_.empty(); }
  const std::map<long, PolyForm>& parts() const noexcept { return parts_; }

  void add_part(long k, const PolyForm& p);

  ExpPolyForm& operator+=(const ExpPolyForm& o);
  friend ExpPolyForm operator*(const ExpPolyForm& a, const ExpPolyForm& b);
  ExpPolyForm pow(unsigned k) const;
  ExpPolyForm scaled(const Rational& c) const;

  Expr to_expr(const ChartPtr& chart) const;

private:
  int dim_;
  int exp_coord_;
  std::map<long, PolyForm> parts_;
};

std::optional<ExpPolyForm> exp_poly_normalize(const Expr& e, int exp_coord);

}  // namespace jacobikit

#endif

#ifndef JACOBIKIT_TEST_SUPPORT_HPP
#define JACOBIKIT_TEST_SUPPORT_HPP

#include <string>
#include <vector>

#include "jacobikit/multivector.hpp"
#include "jacobikit/polyform.hpp"
#include "jacobikit/rng.hpp"
#include "jacobikit/zerocheck.hpp"

namespace jktest {

using namespace jacobikit;

inline ChartPtr chart3() { return make_chart({"x0", "x1", "x2"}); }

inline ChartPtr chart_n(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return make_chart(std::move(names));
}

inline bool exact_zero(const Expr& e) {
  auto p = poly_normalize(e);
  return p && p->is_zero();
}

inline bool exact_equal(const Expr& a, const Expr& b) { return exact_zero(sub(a, b)); }

inline bool sampled_zero(const Expr& e, int count = 200, std::uint64_t seed = 17,
                         double tol = 1e-9) {
  return expr_is_zero(e, SampledStrategy{count, seed, tol}).zero;
}

// Zero check that understands an exponential prefactor in coordinate t.
inline bool exp_zero(const Expr& e, int exp_coord) {
  auto p = exp_poly_normalize(e, exp_coord);
  return p && p->is_zero();
}

// Central finite difference, the independent oracle for exact
// differentiation.
inline double fd_partial(const Expr& f, int i, std::vector<double> p, double h = 1e-6) {
  p[static_cast<std::size_t>(i)] += h;
  const double hi = evaluate(f, p);
  p[static_cast<std::size_t>(i)] -= 2 * h;
  const double lo = evaluate(f, p);
  return (hi - lo) / (2 * h);
}

inline Expr random_poly(const ChartPtr& chart, SampleGen& gen, int max_deg = 2,
                        int max_terms = 2) {
  const int n = chart->dim();
  PolyForm acc(n);
  const int nterms = gen.uniform_int(1, max_terms);
  for (int t = 0; t < nterms; ++t) {
    PolyForm::Monomial mono(static_cast<std::size_t>(n), 0);
    const int deg = gen.uniform_int(0, max_deg);
    for (int d = 0; d < deg; ++d) ++mono[static_cast<std::size_t>(gen.uniform_int(0, n - 1))];
    acc.add_term(mono, gen.small_rational());
  }
  if (acc.is_zero()) acc = PolyForm::constant(n, Rational(1));
  return acc.to_expr(chart);
}

// Random multivector with polynomial coefficients; roughly half of the
// index tuples carry a coefficient.
inline MultivectorField random_multivector(const ChartPtr& chart, int degree, SampleGen& gen,
                                           int coeff_deg = 2) {
  MultivectorField out(chart, degree);
  const int n = chart->dim();
  std::vector<int> tuple;
  // iterate increasing tuples
  std::vector<int> cur(static_cast<std::size_t>(degree));
  if (degree > n) return out;
  for (int i = 0; i < degree; ++i) cur[static_cast<std::size_t>(i)] = i;
  for (;;) {
    if (gen.uniform_int(0, 1) == 1) {
      out.set_coefficient(cur, random_poly(chart, gen, coeff_deg, 2));
    }
    int i = degree - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - degree + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < degree; ++j) {
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

inline MultivectorField random_vector_field(const ChartPtr& chart, SampleGen& gen,
                                            int coeff_deg = 2) {
  std::vector<Expr> comps;
  for (int i = 0; i < chart->dim(); ++i) comps.push_back(random_poly(chart, gen, coeff_deg, 2));
  return MultivectorField::vector_field(chart, std::move(comps));
}

// Classical Lie bracket of vector fields, written out directly so the
// Schouten machinery can be checked against it.
inline MultivectorField classical_lie_bracket(const MultivectorField& X,
                                              const MultivectorField& Y) {
  const ChartPtr& chart = X.chart();
  const auto xc = X.components();
  const auto yc = Y.components();
  std::vector<Expr> out;
  for (int i = 0; i < chart->dim(); ++i) {
    std::vector<Expr> terms;
    for (int j = 0; j < chart->dim(); ++j) {
      terms.push_back(mul(xc[static_cast<std::size_t>(j)],
                          differentiate(yc[static_cast<std::size_t>(i)], j)));
      terms.push_back(negate(mul(yc[static_cast<std::size_t>(j)],
                                 differentiate(xc[static_cast<std::size_t>(i)], j))));
    }
    out.push_back(make_sum(std::move(terms)));
  }
  return MultivectorField::vector_field(chart, std::move(out));
}

inline bool field_exact_zero(const MultivectorField& f) {
  for (const auto& [idx, c] : f.coefficients()) {
    if (!exact_zero(c)) return false;
  }
  return true;
}

inline bool fields_exact_equal(const MultivectorField& a, const MultivectorField& b) {
  return field_exact_zero(mv_sub(a, b));
}

}  // namespace jktest

#endif

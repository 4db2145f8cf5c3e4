#include <doctest.h>

#include <cmath>

#include "jacobikit/errors.hpp"
#include "test_support.hpp"

using namespace jktest;

TEST_CASE("parse basic expressions") {
  auto chart = chart3();
  const Expr e = parse_expr("x2*x0 - 1/2", chart);
  CHECK(e->kind == ExprKind::Sum);
  CHECK(evaluate(e, std::vector<double>{2, 0, 3}) == doctest::Approx(5.5));

  auto t_chart = make_chart({"t"});
  const Expr g = parse_expr("exp(-t)", t_chart);
  CHECK(g->kind == ExprKind::Call);
  CHECK(evaluate(g, std::vector<double>{0.0}) == doctest::Approx(1.0));
}

TEST_CASE("parse errors carry positions") {
  auto chart = chart3();
  CHECK_THROWS_AS(parse_expr("x0^", chart), ParseError);
  try {
    parse_expr("x0^", chart);
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
  CHECK_THROWS_AS(parse_expr("y0 + 1", chart), ParseError);
  CHECK_THROWS_AS(parse_expr("x0^x1", chart), ParseError);
  CHECK_THROWS_AS(parse_expr("x0^2.5", chart), ParseError);
  CHECK_THROWS_AS(parse_expr("(x0", chart), ParseError);
  CHECK_THROWS_AS(parse_expr("x0 x1", chart), ParseError);
}

TEST_CASE("rational and scientific literals are exact") {
  auto chart = chart3();
  const Expr a = parse_expr("0.5", chart);
  REQUIRE(is_constant(a));
  CHECK(a->value == Rational(1, 2));
  const Expr b = parse_expr("1e-12", chart);
  REQUIRE(is_constant(b));
  CHECK(b->value == Rational(BigInt(1), BigInt("1000000000000")));
  const Expr c = parse_expr("2/3", chart);
  REQUIRE(is_constant(c));
  CHECK(c->value == Rational(2, 3));
  const Expr d = parse_expr("1.5e2", chart);
  REQUIRE(is_constant(d));
  CHECK(d->value == Rational(150));
}

TEST_CASE("differentiate: power rule and independence") {
  auto chart = chart3();
  const Expr f = parse_expr("x2*x0", chart);
  CHECK(exact_equal(differentiate(f, 0), parse_expr("x2", chart)));
  CHECK(exact_zero(differentiate(f, 1)));
}

TEST_CASE("differentiate against the finite-difference oracle") {
  auto t_chart = make_chart({"t"});
  const Expr f = parse_expr("exp(-t)", t_chart);
  const Expr df = differentiate(f, 0);
  SampleGen gen(123);
  for (int i = 0; i < 20; ++i) {
    const std::vector<double> p{gen.uniform_pm1()};
    const double exact = evaluate(df, p);
    const double approx = fd_partial(f, 0, p);
    CHECK(std::abs(exact - approx) <= 1e-7 * (1.0 + std::abs(exact)));
  }
  // and the closed form
  CHECK(sampled_zero(sub(df, negate(f))));

  auto chart = chart3();
  const Expr g = parse_expr("sin(x0*x1) + log(2 + cos(x2)) + x1/x2^2", chart);
  SampleGen gen2(321);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> p{gen2.uniform_pm1(), gen2.uniform_pm1(), 1.0 + gen2.uniform01()};
    for (int j = 0; j < 3; ++j) {
      const double exact = evaluate(differentiate(g, j), p);
      const double approx = fd_partial(g, j, p);
      CHECK(std::abs(exact - approx) <= 1e-6 * (1.0 + std::abs(exact)));
    }
  }
}

TEST_CASE("evaluate rejects singular input") {
  auto chart = chart3();
  CHECK_THROWS_AS(evaluate(parse_expr("1/x0", chart), std::vector<double>{0, 1, 1}), DomainError);
  CHECK_THROWS_AS(evaluate(parse_expr("log(x0)", chart), std::vector<double>{-1, 0, 0}),
                  DomainError);
  CHECK_THROWS_AS(evaluate(parse_expr("x0^-2", chart), std::vector<double>{0, 0, 0}), DomainError);
  try {
    evaluate(parse_expr("x1 + 1/x0", chart), std::vector<double>{0, 1, 1});
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(e.subexpr() == "1/x0");
  }
}

TEST_CASE("poly_normalize canonical forms") {
  auto chart = chart3();
  const auto p = poly_normalize(parse_expr("(x0+x1)*(x0-x1)", chart));
  REQUIRE(p.has_value());
  REQUIRE(p->terms().size() == 2);
  PolyForm::Monomial m0{2, 0, 0};
  PolyForm::Monomial m1{0, 2, 0};
  CHECK(p->terms().at(m0) == Rational(1));
  CHECK(p->terms().at(m1) == Rational(-1));

  const auto z = poly_normalize(parse_expr("x0 - x0", chart));
  REQUIRE(z.has_value());
  CHECK(z->is_zero());

  CHECK_FALSE(poly_normalize(parse_expr("exp(x0)", chart)).has_value());
  CHECK_FALSE(poly_normalize(parse_expr("x0^-1", chart)).has_value());
  CHECK_FALSE(poly_normalize(parse_expr("x1/x0", chart)).has_value());
  // quotients by nonzero constants stay polynomial
  CHECK(poly_normalize(parse_expr("x1/(2 - 1)", chart)).has_value());
}

TEST_CASE("expr_is_zero strategies") {
  auto chart = chart3();
  CHECK(expr_is_zero(parse_expr("x0*x1 - x1*x0", chart), ExactStrategy{}).zero);

  const auto ok = expr_is_zero(parse_expr("exp(x0)*exp(-x0) - 1", chart),
                               SampledStrategy{100, 7, 1e-9});
  CHECK(ok.zero);
  CHECK(ok.backend == Backend::Sampled);

  const auto bad = expr_is_zero(parse_expr("x0 - 1e-12", chart), SampledStrategy{100, 7, 1e-9});
  CHECK_FALSE(bad.zero);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->point.size() == 3);
  CHECK(bad.witness->residual > 0);

  CHECK_THROWS_AS(expr_is_zero(parse_expr("exp(x0)", chart), ExactStrategy{}),
                  NotPolynomialError);
}

TEST_CASE("differentiation is linear") {
  auto chart = chart3();
  SampleGen gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Expr f = random_poly(chart, gen, 3, 3);
    const Expr g = random_poly(chart, gen, 3, 3);
    const Rational a = gen.small_rational();
    const Rational b = gen.small_rational();
    const int i = gen.uniform_int(0, 2);
    const Expr lhs = differentiate(add(scale(a, f), scale(b, g)), i);
    const Expr rhs = add(scale(a, differentiate(f, i)), scale(b, differentiate(g, i)));
    CHECK(exact_equal(lhs, rhs));
  }
}

TEST_CASE("mixed partials commute") {
  auto chart = chart3();
  SampleGen gen(6);
  for (int trial = 0; trial < 30; ++trial) {
    const Expr f = random_poly(chart, gen, 3, 3);
    const int i = gen.uniform_int(0, 2);
    const int j = gen.uniform_int(0, 2);
    CHECK(exact_zero(sub(differentiate(differentiate(f, i), j),
                         differentiate(differentiate(f, j), i))));
  }
  const Expr g = parse_expr("sin(x0*x1)*exp(x2)", chart);
  CHECK(sampled_zero(
      sub(differentiate(differentiate(g, 0), 2), differentiate(differentiate(g, 2), 0))));
}

TEST_CASE("poly_normalize is a ring homomorphism") {
  auto chart = chart3();
  SampleGen gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Expr f = random_poly(chart, gen, 2, 3);
    const Expr g = random_poly(chart, gen, 2, 3);
    const auto pf = poly_normalize(f);
    const auto pg = poly_normalize(g);
    const auto pfg = poly_normalize(mul(f, g));
    REQUIRE(pf.has_value());
    REQUIRE(pg.has_value());
    REQUIRE(pfg.has_value());
    CHECK(*pfg == *pf * *pg);
  }
}

TEST_CASE("canonical re-expansion evaluates consistently") {
  auto chart = chart3();
  SampleGen gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Expr f = random_poly(chart, gen, 3, 3);
    const auto p = poly_normalize(f);
    REQUIRE(p.has_value());
    const Expr g = p->to_expr(chart);
    const std::vector<double> pt{gen.uniform_pm1(), gen.uniform_pm1(), gen.uniform_pm1()};
    const double a = evaluate(f, pt);
    const double b = evaluate(g, pt);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("printer output parses back to the same function") {
  auto chart = chart3();
  SampleGen gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Expr f = random_poly(chart, gen, 3, 3);
    const Expr g = parse_expr(to_string(f), chart);
    CHECK(exact_equal(f, g));
  }
  for (const char* text : {"exp(-x0)*sin(x1) - cos(x2)/(1 + x1^2)", "-x0^2 + x1*(-1/2)",
                           "(x0 + x1)^3/(2 - sin(x2))", "log(2 + x0^2) - x1^-2"}) {
    const Expr f = parse_expr(text, chart);
    const Expr g = parse_expr(to_string(f), chart);
    CHECK(sampled_zero(sub(f, g), 100, 11, 1e-12));
  }
}

TEST_CASE("exp_poly_normalize factors exponential prefactors") {
  auto chart = make_chart({"x", "t"});
  const Expr e = parse_expr("exp(-t)*x + exp(-t)*(x^2 - x) - exp(-t)*x^2", chart);
  const auto p = exp_poly_normalize(e, 1);
  REQUIRE(p.has_value());
  CHECK(p->is_zero());

  const Expr q = parse_expr("exp(t)*exp(t)*x - exp(2*t)*x", chart);
  const auto pq = exp_poly_normalize(q, 1);
  REQUIRE(pq.has_value());
  CHECK(pq->is_zero());

  const Expr r = parse_expr("x/exp(t) - exp(-t)*x", chart);
  const auto pr = exp_poly_normalize(r, 1);
  REQUIRE(pr.has_value());
  CHECK(pr->is_zero());

  CHECK_FALSE(exp_poly_normalize(parse_expr("exp(x)", chart), 1).has_value());
  CHECK_FALSE(exp_poly_normalize(parse_expr("exp(t^2)", chart), 1).has_value());

  const Expr nz = parse_expr("exp(-t)*x - exp(t)*x", chart);
  const auto pnz = exp_poly_normalize(nz, 1);
  REQUIRE(pnz.has_value());
  CHECK_FALSE(pnz->is_zero());
}

TEST_CASE("chart invariants") {
  CHECK_THROWS_AS(make_chart({}), Error);
  CHECK_THROWS_AS(make_chart({"x", "x"}), Error);
  CHECK_THROWS_AS(make_coordinate(chart3(), 3), Error);
  CHECK_THROWS_AS(make_quotient(make_coordinate(chart3(), 0), make_constant(chart3(), Rational(0))),
                  Error);
}

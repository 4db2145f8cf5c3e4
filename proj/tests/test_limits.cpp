#include <doctest.h>

#include "jacobikit/catalog.hpp"
#include "jacobikit/limits.hpp"
#include "test_support.hpp"

using namespace jktest;

TEST_CASE("promotion keeps the blocks straight") {
  // constants promote unchanged
  const auto one = parse_cylindrical(0, "1");
  const auto one5 = cyl_promote(one, 2);
  CHECK(one5.level == 2);
  CHECK(exact_equal(one5.fn, make_constant(one5.fn->chart, Rational(1))));

  // position coordinate stays put
  const auto f = parse_cylindrical(1, "x1");
  const auto f2 = cyl_promote(f, 2);
  CHECK(exact_equal(f2.fn, make_coordinate(f2.fn->chart, 1)));

  // momentum coordinate shifts with the block
  const auto g = parse_cylindrical(1, "x2");
  const auto g2 = cyl_promote(g, 2);
  CHECK(exact_equal(g2.fn, make_coordinate(g2.fn->chart, 3)));

  CHECK_THROWS_AS(cyl_promote(g2, 1), Error);
}

TEST_CASE("cylindrical brackets at the common level") {
  const auto f = parse_cylindrical(1, "x1");
  const auto g = parse_cylindrical(1, "x2");
  const auto fg = cyl_bracket(f, g);
  CHECK(fg.level == 1);
  CHECK(exact_equal(fg.fn, make_constant(fg.fn->chart, Rational(-1))));

  // {1, x0} = 1 at any level, including level 0
  for (int level : {0, 1, 3}) {
    const auto one = parse_cylindrical(level, "1");
    const auto x0 = parse_cylindrical(level, "x0");
    const auto b = cyl_bracket(one, x0);
    CHECK(exact_equal(b.fn, make_constant(b.fn->chart, Rational(1))));
  }

  // mixed levels promote to the larger one
  const auto h = parse_cylindrical(2, "x3*x0");
  const auto fh = cyl_bracket(f, h);
  CHECK(fh.level == 2);
}

TEST_CASE("promotion commutes with the bracket") {
  SampleGen gen(101);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = gen.uniform_int(0, 3);
    const int m2 = gen.uniform_int(m, 3);
    const auto chart = standard_level_chart(m);
    const auto f = make_cylindrical(m, random_poly(chart, gen, 3, 3));
    const auto g = make_cylindrical(m, random_poly(chart, gen, 3, 3));

    const auto low = cyl_promote(cyl_bracket(f, g), m2);
    const auto high = cyl_bracket(cyl_promote(f, m2), cyl_promote(g, m2));
    CHECK(high.level == low.level);
    CHECK(exact_zero(sub(low.fn, high.fn)));
  }
}

TEST_CASE("jacobi identity for cylindrical triples") {
  SampleGen gen(102);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = gen.uniform_int(1, 2);
    const auto chart = standard_level_chart(m);
    const auto f = make_cylindrical(m, random_poly(chart, gen, 2, 2));
    const auto g = make_cylindrical(m, random_poly(chart, gen, 2, 2));
    const auto h = make_cylindrical(m, random_poly(chart, gen, 2, 2));
    auto br = [&](const CylindricalFunction& a, const CylindricalFunction& b) {
      return cyl_bracket(a, b);
    };
    const auto cyc1 = br(f, br(g, h));
    const auto cyc2 = br(g, br(h, f));
    const auto cyc3 = br(h, br(f, g));
    CHECK(exact_zero(make_sum({cyc1.fn, cyc2.fn, cyc3.fn})));
  }
}

TEST_CASE("inclusions are Jacobi maps into the cylindrical structures") {
  RunConfig cfg;
  cfg.trials = 10;
  for (int m = 1; m <= 2; ++m) {
    const auto src = standard_jacobi(m);
    const auto dst = cylinder_extension(m, m + 1);
    const auto report = jacobi_map_check(src, dst, inclusion_map(m, m + 1), 10, cfg);
    CHECK(report.all_passed());
  }
}

TEST_CASE("flat set matters: the full target structure rejects the inclusion") {
  // Against the full standard structure at the higher level, pairs
  // involving the fresh conjugate coordinates witness the failure.
  RunConfig cfg;
  cfg.trials = 10;
  const auto src = standard_jacobi(1);
  const auto dst = standard_jacobi(2);
  const auto report = jacobi_map_check(src, dst, inclusion_map(1, 2), 15, cfg);
  CHECK_FALSE(report.all_passed());
}

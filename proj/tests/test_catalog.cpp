#include <doctest.h>

#include "jacobikit/catalog.hpp"
#include "test_support.hpp"

using namespace jktest;

namespace {

// First-jet bracket through the Cartan fields X_i = d/dx^i + u_i d/du:
// {f,g} = sum_i (X_i f g_{u_i} - X_i g f_{u_i}) + f g_u - g f_u.
Expr jet_bracket_oracle(const PartialJacobiStructure& s, int n, const Expr& f, const Expr& g) {
  auto d = [&](const Expr& e, int i) { return differentiate(e, i); };
  const int u = n;
  std::vector<Expr> terms;
  for (int i = 1; i <= n; ++i) {
    const Expr ui = make_coordinate(s.chart, n + i);
    const Expr xf = add(d(f, i - 1), mul(ui, d(f, u)));
    const Expr xg = add(d(g, i - 1), mul(ui, d(g, u)));
    terms.push_back(sub(mul(xf, d(g, n + i)), mul(xg, d(f, n + i))));
  }
  terms.push_back(sub(mul(f, d(g, u)), mul(g, d(f, u))));
  return make_sum(std::move(terms));
}

}  // namespace

TEST_CASE("standard structure coefficients from the wedge expansion") {
  const auto s1 = standard_jacobi(1);
  CHECK(exact_equal(s1.lambda_entry(0, 2), make_coordinate(s1.chart, 2)));
  CHECK(exact_equal(s1.lambda_entry(1, 2), make_constant(s1.chart, Rational(-1))));
  CHECK(exact_zero(s1.lambda_entry(0, 1)));

  const auto s2 = standard_jacobi(2);
  CHECK(exact_equal(s2.lambda_entry(0, 3), make_coordinate(s2.chart, 3)));
  CHECK(exact_equal(s2.lambda_entry(0, 4), make_coordinate(s2.chart, 4)));
  CHECK(exact_equal(s2.lambda_entry(1, 3), make_constant(s2.chart, Rational(-1))));
  CHECK(exact_equal(s2.lambda_entry(2, 4), make_constant(s2.chart, Rational(-1))));
  CHECK(exact_zero(s2.lambda_entry(1, 4)));
  CHECK(exact_zero(s2.lambda_entry(2, 3)));

  CHECK_THROWS_AS(standard_jacobi(0), Error);
}

TEST_CASE("contact structure brackets") {
  const auto s = contact_canonical(1);
  const Expr t = make_coordinate(s.chart, 0);
  const Expr q = make_coordinate(s.chart, 1);
  const Expr p = make_coordinate(s.chart, 2);
  // hand expansion: Lambda(dq, dp) = 1
  CHECK(exact_equal(jacobi_bracket(s, q, p), make_constant(s.chart, Rational(1))));
  // Lambda(dt,dp) = p and the Reeb term contributes -p
  CHECK(exact_zero(jacobi_bracket(s, t, p)));
  SampleGen gen(71);
  const Expr f = random_poly(s.chart, gen);
  CHECK(exact_zero(jacobi_bracket(s, f, f)));
  CHECK_THROWS_AS(contact_canonical(0), Error);
}

TEST_CASE("one-jet structure reproduces the Cartan-field bracket") {
  for (int n = 1; n <= 2; ++n) {
    const auto s = one_jet(n);
    SampleGen gen(72 + static_cast<std::uint64_t>(n));
    for (int trial = 0; trial < 15; ++trial) {
      const Expr f = random_poly(s.chart, gen, 2, 3);
      const Expr g = random_poly(s.chart, gen, 2, 3);
      CHECK(exact_zero(sub(jacobi_bracket(s, f, g), jet_bracket_oracle(s, n, f, g))));
    }
  }

  const auto s = one_jet(1);
  const Expr x1 = make_coordinate(s.chart, 0);
  const Expr u = make_coordinate(s.chart, 1);
  const Expr u1 = make_coordinate(s.chart, 2);
  CHECK(exact_equal(jacobi_bracket(s, x1, u1), make_constant(s.chart, Rational(1))));
  CHECK(exact_zero(jacobi_bracket(s, u, u)));

  // {1, g} = dg/du
  SampleGen gen(73);
  for (int trial = 0; trial < 10; ++trial) {
    const Expr g = random_poly(s.chart, gen);
    CHECK(exact_zero(sub(jacobi_bracket(s, make_constant(s.chart, Rational(1)), g),
                         differentiate(g, 1))));
  }
  CHECK_THROWS_AS(one_jet(0), Error);
}

TEST_CASE("lie-poisson structures") {
  const auto s = lie_poisson(StructureConstants::so3());
  const Expr x = make_coordinate(s.chart, 0);
  const Expr y = make_coordinate(s.chart, 1);
  const Expr z = make_coordinate(s.chart, 2);
  CHECK(exact_equal(jacobi_bracket(s, x, y), z));
  CHECK(exact_equal(jacobi_bracket(s, y, z), x));
  CHECK(exact_equal(jacobi_bracket(s, z, x), y));

  // abelian constants give the zero bracket
  const StructureConstants abelian(2, std::vector<Rational>(8, Rational(0)));
  const auto a = lie_poisson(abelian);
  SampleGen gen(74);
  CHECK(exact_zero(jacobi_bracket(a, random_poly(a.chart, gen), random_poly(a.chart, gen))));

  // constants violating the Jacobi identity are rejected with a witness
  std::vector<Rational> bad(27, Rational(0));
  auto set = [&](int i, int j, int k, int v) {
    bad[(static_cast<std::size_t>(i) * 3 + j) * 3 + k] = v;
    bad[(static_cast<std::size_t>(j) * 3 + i) * 3 + k] = -v;
  };
  set(0, 1, 2, 1);
  set(1, 2, 0, 1);
  set(2, 0, 1, -1);  // flipped sign breaks the identity
  try {
    StructureConstants(3, std::move(bad));
    CHECK(false);
  } catch (const StructureError& e) {
    CHECK(std::string(e.what()).find("Jacobi identity") != std::string::npos);
  }

  // antisymmetry violations are rejected too
  std::vector<Rational> asym(27, Rational(0));
  asym[(0 * 3 + 1) * 3 + 2] = 1;  // missing the mirrored entry
  CHECK_THROWS_AS(StructureConstants(3, std::move(asym)), StructureError);
}

TEST_CASE("cosymplectic extended cotangent bundle") {
  const auto c = cosymplectic_extended_cotangent(1);
  const auto& s = c.structure;
  // P = dq ^ dp, reeb = 0, E = d/dt
  CHECK(exact_equal(s.lambda_entry(0, 1), make_constant(s.chart, Rational(1))));
  CHECK(exact_zero(s.lambda_entry(0, 2)));
  CHECK(exact_zero(s.lambda_entry(1, 2)));
  for (const auto& r : s.reeb) CHECK(exact_zero(r));
  REQUIRE(c.distinguished_field.size() == 3);
  CHECK(exact_zero(c.distinguished_field[0]));
  CHECK(exact_zero(c.distinguished_field[1]));
  CHECK(exact_equal(c.distinguished_field[2], make_constant(s.chart, Rational(1))));

  // i_E Omega = 0 and i_E eta = 1: Omega = dq^dp pairs E only through
  // the q,p slots, which are zero.
  // L_E P = 0, exactly.
  const auto E = MultivectorField::vector_field(s.chart, c.distinguished_field);
  CHECK(field_exact_zero(lie_derivative(E, s.lambda_bivector())));

  // and m = 2
  const auto c2 = cosymplectic_extended_cotangent(2);
  const auto& s2 = c2.structure;
  CHECK(exact_equal(s2.lambda_entry(0, 2), make_constant(s2.chart, Rational(1))));
  CHECK(exact_equal(s2.lambda_entry(1, 3), make_constant(s2.chart, Rational(1))));
  CHECK(exact_equal(c2.distinguished_field[4], make_constant(s2.chart, Rational(1))));
  const auto E2 = MultivectorField::vector_field(s2.chart, c2.distinguished_field);
  CHECK(field_exact_zero(lie_derivative(E2, s2.lambda_bivector())));

  CHECK_THROWS_AS(cosymplectic_extended_cotangent(0), Error);
}

TEST_CASE("contact and one-jet agree under the coordinate identification") {
  // (t, q^i, p_i) -> (x^i, u, u_i): t to u, q to x, p to u_i.
  const auto contact = contact_canonical(1);
  const auto jet = one_jet(1);
  RunConfig cfg;
  cfg.trials = 10;
  // jet coordinates (x1, u, u1) as functions of contact coordinates
  std::vector<Expr> identification;
  identification.push_back(make_coordinate(contact.chart, 1));  // x1 <- q1
  identification.push_back(make_coordinate(contact.chart, 0));  // u  <- t
  identification.push_back(make_coordinate(contact.chart, 2));  // u1 <- p1
  const auto report = jacobi_map_check(contact, jet, identification, 10, cfg);
  CHECK(report.all_passed());
}

#include <doctest.h>

#include "jacobikit/catalog.hpp"
#include "jacobikit/homogenize.hpp"
#include "test_support.hpp"

using namespace jktest;

TEST_CASE("poissonize assembles exp(-t) (Lambda + dt ^ E)") {
  const auto hps = poissonize(standard_jacobi(1));
  CHECK(hps.t_index == 3);
  CHECK(hps.hat.dim() == 4);
  CHECK(hps.hat.flat == std::vector<int>{0, 1, 2, 3});
  for (const auto& r : hps.hat.reeb) CHECK(exact_zero(r));

  const auto lam = hps.lambda_hat();
  const auto chart = hps.hat.chart;
  const Expr damp = hps.exp_minus_t();
  // direct assembly from the base tensors
  const Expr x2 = make_coordinate(chart, 2);
  CHECK(exp_zero(sub(lam.coefficient(std::vector<int>{0, 2}), mul(damp, x2)), 3));
  CHECK(exp_zero(add(lam.coefficient(std::vector<int>{1, 2}), damp), 3));
  CHECK(exp_zero(add(lam.coefficient(std::vector<int>{0, 3}), damp), 3));  // -e^{-t} E^0
  CHECK(exact_zero(lam.coefficient(std::vector<int>{1, 3})));
  CHECK(exact_zero(lam.coefficient(std::vector<int>{2, 3})));
  CHECK(exact_zero(lam.coefficient(std::vector<int>{0, 1})));
}

TEST_CASE("poissonize degenerate cases") {
  // zero structure lifts to the zero bivector
  nlohmann::json doc;
  doc["dimension"] = 2;
  doc["coordinates"] = {"x0", "x1"};
  doc["flat"] = {0, 1};
  {
    auto rows = nlohmann::json::array();
    rows.push_back(nlohmann::json::array({"0", "0"}));
    rows.push_back(nlohmann::json::array({"0", "0"}));
    doc["lambda_sharp"] = rows;
  }
  doc["reeb"] = {"0", "0"};
  const auto zero = structure_from_json(doc);
  CHECK(poissonize(zero).lambda_hat().is_empty());

  // Poisson input: no dt column appears
  const auto so3 = lie_poisson(StructureConstants::so3());
  const auto hps = poissonize(so3);
  const auto lam = hps.lambda_hat();
  for (const auto& [idx, c] : lam.coefficients()) {
    CHECK(idx[1] != hps.t_index);  // only base-base couplings
  }
  const Expr damp = hps.exp_minus_t();
  const Expr z = make_coordinate(hps.hat.chart, 2);
  CHECK(exp_zero(sub(lam.coefficient(std::vector<int>{0, 1}), mul(damp, z)), hps.t_index));
}

TEST_CASE("fiber coordinate name avoids collisions") {
  const auto contact = contact_canonical(1);  // already has a coordinate named t
  const auto hps = poissonize(contact);
  CHECK(hps.hat.chart->name(hps.t_index) == "t_");
  RunConfig cfg;
  cfg.trials = 10;
  CHECK(verify_homogeneous(hps, cfg).all_passed());
}

TEST_CASE("hat lift homogeneity") {
  const auto hps = poissonize(standard_jacobi(1));
  const auto chart = hps.hat.chart;
  const auto Z = hps.homothety();

  // 1 lifts to e^t
  CHECK(exp_zero(sub(hat_lift(hps, make_constant(hps.base.chart, Rational(1))), hps.exp_plus_t()),
                 hps.t_index));

  // Z(f-hat) = f-hat for polynomial f
  SampleGen gen(81);
  for (int trial = 0; trial < 10; ++trial) {
    const Expr f = random_poly(hps.base.chart, gen);
    const Expr lifted = hat_lift(hps, f);
    const Expr zf = mv_apply(Z, std::vector<Expr>{lifted});
    CHECK(exp_zero(sub(zf, lifted), hps.t_index));
  }

  // d(f-hat) = e^t (df + f dt) componentwise
  const Expr f = parse_expr("x1*x2 - 1/3", hps.base.chart);
  const Expr lifted = hat_lift(hps, f);
  const Expr et = hps.exp_plus_t();
  for (int i = 0; i < 3; ++i) {
    const Expr want = mul(et, extend_to_hat(hps, differentiate(f, i)));
    CHECK(exp_zero(sub(differentiate(lifted, i), want), hps.t_index));
  }
  CHECK(exp_zero(sub(differentiate(lifted, hps.t_index), mul(et, extend_to_hat(hps, f))),
                 hps.t_index));

  // membership is enforced on the base
  nlohmann::json doc;
  doc["dimension"] = 2;
  doc["coordinates"] = {"x0", "x1"};
  doc["flat"] = {0};
  {
    auto rows = nlohmann::json::array();
    rows.push_back(nlohmann::json::array({"0"}));
    rows.push_back(nlohmann::json::array({"0"}));
    doc["lambda_sharp"] = rows;
  }
  doc["reeb"] = {"1", "0"};
  const auto partial = structure_from_json(doc);
  const auto hp = poissonize(partial);
  CHECK_THROWS_AS(hat_lift(hp, make_coordinate(partial.chart, 1)), MembershipError);
}

TEST_CASE("verify_homogeneous passes for catalog structures") {
  RunConfig cfg;
  cfg.trials = 10;
  for (const auto& base : {standard_jacobi(1), contact_canonical(1),
                           lie_poisson(StructureConstants::so3())}) {
    const auto hps = poissonize(base);
    const auto report = verify_homogeneous(hps, cfg);
    CHECK(report.all_passed());
    // the two tensor checks decide exactly after factoring
    for (const auto& c : report.checks()) {
      if (c.name == "hat-poisson" || c.name == "hat-homogeneity") {
        CHECK(c.backend != Backend::Sampled);
      }
    }
  }
}

TEST_CASE("unscaled lift fails to be Poisson") {
  // With the exponential factor dropped, [T,T] = 2 E ^ Lambda != 0.
  const auto hps = poissonize(standard_jacobi(1));
  const auto T = mv_scale_expr(hps.exp_plus_t(), hps.lambda_hat()).pruned(hps.t_index);
  const auto bracket = schouten(T, T);
  const auto fz = field_is_zero(bracket, ZeroPolicy{}, hps.t_index);
  CHECK_FALSE(fz.zero);

  // and it equals twice the wedge of the lifted Reeb field with Lambda
  const auto chart = hps.hat.chart;
  std::vector<Expr> e_lift(static_cast<std::size_t>(4), make_constant(chart, Rational(0)));
  for (int i = 0; i < 3; ++i) e_lift[static_cast<std::size_t>(i)] = extend_to_hat(hps, hps.base.reeb[static_cast<std::size_t>(i)]);
  const auto E = MultivectorField::vector_field(chart, std::move(e_lift));
  const auto expect = mv_scale(Rational(2), wedge(E, T));
  CHECK(field_exact_zero(mv_sub(bracket, expect)));
}

TEST_CASE("base bracket recovered at t = 0") {
  const auto hps = poissonize(standard_jacobi(1));
  const ZeroPolicy policy;
  SampleGen gen(82);
  for (int trial = 0; trial < 5; ++trial) {
    const Expr f = random_poly(hps.base.chart, gen);
    const Expr g = random_poly(hps.base.chart, gen);
    const Expr base_bracket = jacobi_bracket(hps.base, f, g);
    const Expr hat_bracket = jacobi_bracket(
        hps.hat, hat_lift(hps, f), hat_lift(hps, g), policy);
    SampleGen pts(trial + 100);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> p{pts.uniform_pm1(), pts.uniform_pm1(), pts.uniform_pm1()};
      std::vector<double> phat = p;
      phat.push_back(0.0);  // t = 0
      const double lhs = evaluate(base_bracket, p);
      const double rhs = evaluate(hat_bracket, phat);  // e^{-t} {f^,g^} at t=0
      CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
    }
  }
}

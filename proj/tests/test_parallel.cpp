#include <doctest.h>

#include "jacobikit/catalog.hpp"
#include "test_support.hpp"

using namespace jktest;

// The OpenMP kernels must be bitwise-identical to the serial
// reference: results are written by index and combined in a fixed
// order, so scheduling cannot leak into the output.

TEST_CASE("residual evaluation: serial and parallel agree bitwise") {
  auto chart = chart3();
  const Expr f = parse_expr("sin(x0*x1)*exp(x2) - x0^3/(2 + cos(x1))", chart);
  const auto points = sample_points(1000, 3, 99);
  const auto serial = evaluate_residuals(f, points, ExecPolicy::Serial);
  const auto parallel = evaluate_residuals(f, points, ExecPolicy::Parallel);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].residual == parallel[i].residual);
    CHECK(serial[i].scale == parallel[i].scale);
  }
}

TEST_CASE("sampled zero-check: witnesses are scheduling-independent") {
  auto chart = chart3();
  // fails on roughly half the cube: witness must be the first failing
  // point in sample order under both policies
  const Expr f = parse_expr("x0 + x0^3/100", chart);
  const SampledStrategy strat{500, 2024, 1e-9};
  const auto a = expr_is_zero(f, strat, ExecPolicy::Serial);
  const auto b = expr_is_zero(f, strat, ExecPolicy::Parallel);
  REQUIRE_FALSE(a.zero);
  REQUIRE_FALSE(b.zero);
  REQUIRE(a.witness.has_value());
  REQUIRE(b.witness.has_value());
  CHECK(a.witness->point == b.witness->point);
  CHECK(a.witness->residual == b.witness->residual);
}

TEST_CASE("schouten bracket: serial and parallel agree exactly") {
  SampleGen gen(2025);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = gen.uniform_int(3, 5);
    auto chart = chart_n(n);
    const int k = gen.uniform_int(1, 3);
    const int l = gen.uniform_int(1, 3);
    const auto P = random_multivector(chart, k, gen);
    const auto Q = random_multivector(chart, l, gen);
    const auto serial = schouten(P, Q, ExecPolicy::Serial);
    const auto parallel = schouten(P, Q, ExecPolicy::Parallel);
    REQUIRE(serial.coefficients().size() == parallel.coefficients().size());
    for (const auto& [idx, c] : serial.coefficients()) {
      CHECK(to_string(c) == to_string(parallel.coefficient(idx)));
    }
  }
}

TEST_CASE("verification reports are identical under both policies") {
  RunConfig serial_cfg;
  serial_cfg.trials = 5;
  serial_cfg.exec = ExecPolicy::Serial;
  RunConfig parallel_cfg = serial_cfg;
  parallel_cfg.exec = ExecPolicy::Parallel;

  const auto s = contact_canonical(2);
  const auto a = verify_structure(s, serial_cfg);
  const auto b = verify_structure(s, parallel_cfg);
  CHECK(render_json(a) == render_json(b));
}

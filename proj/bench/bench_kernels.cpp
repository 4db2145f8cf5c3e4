// Serial reference vs OpenMP kernels: sampled residual evaluation and
// Schouten coefficient extraction.

#include <benchmark/benchmark.h>

#include "jacobikit/multivector.hpp"
#include "jacobikit/polyform.hpp"
#include "jacobikit/rng.hpp"
#include "jacobikit/zerocheck.hpp"

using namespace jacobikit;

namespace {

ChartPtr chart_n(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return make_chart(std::move(names));
}

Expr heavy_expr(const ChartPtr& chart) {
  // a deliberately deep transcendental expression
  std::string text = "exp(-x0)*sin(x1*x2)";
  for (int i = 0; i < chart->dim(); ++i) {
    text += " + cos(x" + std::to_string(i) + ")^3/(2 + x" + std::to_string(i) + "^2)";
  }
  return parse_expr(text, chart);
}

MultivectorField random_mv(const ChartPtr& chart, int degree, SampleGen& gen) {
  MultivectorField out(chart, degree);
  const int n = chart->dim();
  std::vector<int> cur(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) cur[static_cast<std::size_t>(i)] = i;
  for (;;) {
    PolyForm p(n);
    PolyForm::Monomial mono(static_cast<std::size_t>(n), 0);
    const int deg = gen.uniform_int(0, 2);
    for (int d = 0; d < deg; ++d) ++mono[static_cast<std::size_t>(gen.uniform_int(0, n - 1))];
    p.add_term(mono, gen.small_rational());
    out.set_coefficient(cur, p.to_expr(chart));
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

void BM_residuals(benchmark::State& state, ExecPolicy exec) {
  const int points = static_cast<int>(state.range(0));
  auto chart = chart_n(6);
  const Expr e = heavy_expr(chart);
  const auto pts = sample_points(points, 6, 42);
  for (auto _ : state) {
    auto out = evaluate_residuals(e, pts, exec);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * points);
}

void BM_schouten(benchmark::State& state, ExecPolicy exec) {
  const int n = static_cast<int>(state.range(0));
  auto chart = chart_n(n);
  SampleGen gen(7);
  const auto P = random_mv(chart, 2, gen);
  const auto Q = random_mv(chart, 2, gen);
  for (auto _ : state) {
    auto out = schouten(P, Q, exec);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_residuals, serial, ExecPolicy::Serial)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_residuals, parallel, ExecPolicy::Parallel)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_schouten, serial, ExecPolicy::Serial)->Arg(8)->Arg(10)->Arg(12);
BENCHMARK_CAPTURE(BM_schouten, parallel, ExecPolicy::Parallel)->Arg(8)->Arg(10)->Arg(12);

BENCHMARK_MAIN();

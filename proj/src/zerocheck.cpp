#include "jacobikit/zerocheck.hpp"

#include <cmath>
#include <exception>

#include "jacobikit/errors.hpp"
#include "jacobikit/polyform.hpp"
#include "jacobikit/rng.hpp"

namespace jacobikit {

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::Exact: return "exact";
    case Backend::Sampled: return "sampled";
    case Backend::ExactExp: return "exact-exp";
  }
  return "?";
}

std::vector<PointResidual> evaluate_residuals(const Expr& e,
                                              const std::vector<std::vector<double>>& points,
                                              ExecPolicy exec) {
  std::vector<PointResidual> out(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  detail::run_indexed(points.size(), exec, [&](std::size_t i) {
    try {
      double max_abs = 0.0;
      const double v = evaluate_tracked(e, points[i], max_abs);
      out[i].residual = std::abs(v);
      out[i].scale = 1.0 + max_abs;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

namespace {

ZeroCheckOutcome check_sampled(const Expr& e, const SampledStrategy& s, ExecPolicy exec) {
  const auto points = sample_points(s.count, e->chart->dim(), s.seed);
  const auto residuals = evaluate_residuals(e, points, exec);
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (residuals[i].residual > s.tol * residuals[i].scale) {
      return {false, Backend::Sampled,
              SampleWitness{points[i], residuals[i].residual, residuals[i].scale}};
    }
  }
  return {true, Backend::Sampled, std::nullopt};
}

}  // namespace

ZeroCheckOutcome expr_is_zero(const Expr& e, const ZeroStrategy& strategy, ExecPolicy exec) {
  if (!e) throw Error("null expression");
  if (std::holds_alternative<ExactStrategy>(strategy)) {
    auto p = poly_normalize(e);
    if (!p) {
      throw NotPolynomialError("exact zero-check requested on a non-polynomial expression `" +
                               to_string(e) + "`");
    }
    return {p->is_zero(), Backend::Exact, std::nullopt};
  }
  return check_sampled(e, std::get<SampledStrategy>(strategy), exec);
}

ZeroCheckOutcome check_zero_auto(const Expr& e, const ZeroPolicy& policy) {
  if (!e) throw Error("null expression");
  if (auto p = poly_normalize(e)) return {p->is_zero(), Backend::Exact, std::nullopt};
  return check_sampled(e, policy.sampled(), policy.exec);
}

ZeroCheckOutcome check_zero_auto_exp(const Expr& e, int exp_coord, const ZeroPolicy& policy) {
  if (!e) throw Error("null expression");
  if (auto p = poly_normalize(e)) return {p->is_zero(), Backend::Exact, std::nullopt};
  if (exp_coord >= 0) {
    if (auto p = exp_poly_normalize(e, exp_coord)) {
      return {p->is_zero(), Backend::ExactExp, std::nullopt};
    }
  }
  return check_sampled(e, policy.sampled(), policy.exec);
}

}  // namespace jacobikit

#include "jacobikit/homogenize.hpp"

#include <algorithm>

#include "jacobikit/errors.hpp"

namespace jacobikit {

Expr HomogeneousPoissonStructure::exp_minus_t() const {
  return make_call(UnaryFn::Exp, negate(make_coordinate(hat.chart, t_index)));
}

Expr HomogeneousPoissonStructure::exp_plus_t() const {
  return make_call(UnaryFn::Exp, make_coordinate(hat.chart, t_index));
}

MultivectorField HomogeneousPoissonStructure::lambda_hat() const {
  return hat.lambda_bivector();
}

MultivectorField HomogeneousPoissonStructure::homothety() const {
  std::vector<Expr> z(static_cast<std::size_t>(hat.dim()), make_constant(hat.chart, Rational(0)));
  z[static_cast<std::size_t>(t_index)] = make_constant(hat.chart, Rational(1));
  return MultivectorField::vector_field(hat.chart, std::move(z));
}

Expr extend_to_hat(const HomogeneousPoissonStructure& hps, const Expr& f_over_base) {
  std::vector<Expr> images;
  images.reserve(static_cast<std::size_t>(hps.base.dim()));
  for (int i = 0; i < hps.base.dim(); ++i) images.push_back(make_coordinate(hps.hat.chart, i));
  return substitute(f_over_base, images);
}

HomogeneousPoissonStructure poissonize(const PartialJacobiStructure& base) {
  const int n = base.dim();

  std::vector<std::string> names = base.chart->names();
  std::string fiber = "t";
  while (std::find(names.begin(), names.end(), fiber) != names.end()) fiber += "_";
  names.push_back(fiber);

  HomogeneousPoissonStructure hps;
  hps.base = base;
  hps.t_index = n;

  PartialJacobiStructure& hat = hps.hat;
  hat.chart = make_chart(std::move(names));
  hat.name = base.name.empty() ? "poissonization" : base.name + " (poissonization)";
  hat.flat = base.flat;
  hat.flat.push_back(n);

  const Expr damp = hps.exp_minus_t();
  auto lift = [&](const Expr& e) {
    std::vector<Expr> images;
    images.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) images.push_back(make_coordinate(hat.chart, i));
    return substitute(e, images);
  };

  const std::size_t cols = base.flat.size() + 1;
  const Expr zero = make_constant(hat.chart, Rational(0));
  hat.lambda_sharp.assign(static_cast<std::size_t>(n + 1), std::vector<Expr>(cols, zero));
  for (int i = 0; i < n; ++i) {
    auto& row = hat.lambda_sharp[static_cast<std::size_t>(i)];
    for (std::size_t b = 0; b < base.flat.size(); ++b) {
      const Expr& v = base.lambda_sharp[static_cast<std::size_t>(i)][b];
      if (!is_zero_constant(v)) row[b] = mul(damp, lift(v));
    }
    const Expr& e_i = base.reeb[static_cast<std::size_t>(i)];
    if (!is_zero_constant(e_i)) row[cols - 1] = negate(mul(damp, lift(e_i)));
  }
  {
    auto& trow = hat.lambda_sharp[static_cast<std::size_t>(n)];
    for (std::size_t b = 0; b < base.flat.size(); ++b) {
      const Expr& e_j = base.reeb[static_cast<std::size_t>(base.flat[b])];
      if (!is_zero_constant(e_j)) trow[b] = mul(damp, lift(e_j));
    }
  }
  hat.reeb.assign(static_cast<std::size_t>(n + 1), zero);
  hat.regenerate_sources();
  return hps;
}

Expr hat_lift(const HomogeneousPoissonStructure& hps, const Expr& f_over_base,
              const ZeroPolicy& policy) {
  require_member(f_over_base, hps.base, policy, "f");
  return mul(hps.exp_plus_t(), extend_to_hat(hps, f_over_base));
}

VerificationReport verify_homogeneous(const HomogeneousPoissonStructure& hps,
                                      const RunConfig& cfg) {
  VerificationReport report;
  const ZeroPolicy policy = cfg.zero_policy();
  const int t = hps.t_index;
  const MultivectorField lambda_hat = hps.lambda_hat();

  {
    MultivectorField residual = schouten(lambda_hat, lambda_hat, cfg.exec);
    const auto fz = field_is_zero(residual, policy, t);
    CheckResult c{"hat-poisson", fz.zero, fz.backend, std::nullopt};
    if (!fz.zero) {
      CheckWitness w;
      w.multi_index = fz.index;
      if (fz.witness) {
        w.point = fz.witness->point;
        w.residual = fz.witness->residual;
      }
      c.witness = std::move(w);
    }
    report.add(std::move(c));
  }
  {
    MultivectorField residual =
        mv_add(lie_derivative(hps.homothety(), lambda_hat, cfg.exec), lambda_hat);
    const auto fz = field_is_zero(residual, policy, t);
    CheckResult c{"hat-homogeneity", fz.zero, fz.backend, std::nullopt};
    if (!fz.zero) {
      CheckWitness w;
      w.multi_index = fz.index;
      if (fz.witness) {
        w.point = fz.witness->point;
        w.residual = fz.witness->residual;
      }
      c.witness = std::move(w);
    }
    report.add(std::move(c));
  }
  {
    CheckResult check{"hat-morphism", true, Backend::Sampled, std::nullopt};
    SampleGen gen(cfg.seed);
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const Expr f = random_flat_polynomial(hps.base, gen, cfg.degree);
      const Expr g = random_flat_polynomial(hps.base, gen, cfg.degree);
      const Expr lhs = jacobi_bracket(hps.hat, hat_lift(hps, f, policy), hat_lift(hps, g, policy),
                                      policy);
      const Expr rhs = hat_lift(hps, jacobi_bracket(hps.base, f, g, policy), policy);
      const auto z = expr_is_zero(sub(lhs, rhs), SampledStrategy{cfg.samples, cfg.seed, cfg.tol},
                                  cfg.exec);
      if (!z.zero) {
        check.passed = false;
        CheckWitness w;
        if (z.witness) {
          w.point = z.witness->point;
          w.residual = z.witness->residual;
        }
        w.detail = "trial " + std::to_string(trial) + ": f=`" + to_string(f) + "` g=`" +
                   to_string(g) + "`";
        check.witness = std::move(w);
        break;
      }
    }
    report.add(std::move(check));
  }
  return report;
}

}  // namespace jacobikit

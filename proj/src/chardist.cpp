#include "jacobikit/chardist.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "jacobikit/errors.hpp"

namespace jacobikit {

namespace {

Eigen::VectorXd evaluate_field_at(const MultivectorField& field, std::span<const double> point) {
  const auto comps = field.components();
  Eigen::VectorXd v(static_cast<Eigen::Index>(comps.size()));
  for (std::size_t i = 0; i < comps.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = evaluate(comps[i], point);
  }
  return v;
}

int numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = tol * sv[0];
  if (sv[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) ++rank;
  }
  return rank;
}

}  // namespace

DistributionProbe make_standard_probe(const PartialJacobiStructure& s, std::vector<double> point,
                                      double tol, const ZeroPolicy& policy) {
  DistributionProbe probe;
  probe.structure = s;
  probe.family.push_back(make_constant(s.chart, Rational(1)));
  for (int j : s.flat) probe.family.push_back(make_coordinate(s.chart, j));
  for (const auto& f : probe.family) require_member(f, s, policy, "family member");
  if (static_cast<int>(point.size()) != s.dim()) {
    throw Error("probe point dimension does not match chart");
  }
  probe.point = std::move(point);
  probe.tol = tol;
  return probe;
}

int char_rank(const DistributionProbe& probe, const ZeroPolicy& policy) {
  const auto& s = probe.structure;
  Eigen::MatrixXd m(s.dim(), static_cast<Eigen::Index>(probe.family.size()));
  for (std::size_t c = 0; c < probe.family.size(); ++c) {
    m.col(static_cast<Eigen::Index>(c)) =
        evaluate_field_at(hamiltonian_field(s, probe.family[c], policy), probe.point);
  }
  return numerical_rank(m, probe.tol);
}

VerificationReport involutivity_check(const DistributionProbe& probe,
                                      const std::vector<std::pair<Expr, Expr>>& pairs,
                                      const RunConfig& cfg) {
  const auto& s = probe.structure;
  const ZeroPolicy policy = cfg.zero_policy();
  VerificationReport report;

  Eigen::MatrixXd basis(s.dim(), static_cast<Eigen::Index>(probe.family.size()));
  std::vector<MultivectorField> fields;
  fields.reserve(probe.family.size());
  for (std::size_t c = 0; c < probe.family.size(); ++c) {
    fields.push_back(hamiltonian_field(s, probe.family[c], policy));
    basis.col(static_cast<Eigen::Index>(c)) = evaluate_field_at(fields.back(), probe.point);
  }

  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [f, g] = pairs[p];
    const MultivectorField xf = hamiltonian_field(s, f, policy);
    const MultivectorField xg = hamiltonian_field(s, g, policy);
    const MultivectorField bracket = schouten(xf, xg, cfg.exec);
    const std::string label = "f=`" + to_string(f) + "` g=`" + to_string(g) + "`";

    {
      const Eigen::VectorXd v = evaluate_field_at(bracket, probe.point);
      const Eigen::VectorXd coeffs = basis.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(v);
      const double residual = (basis * coeffs - v).norm();
      const bool ok = residual <= probe.tol * (1.0 + v.norm());
      CheckResult c{"pair-" + std::to_string(p) + "-span", ok, Backend::Sampled, std::nullopt};
      if (!ok) {
        CheckWitness w;
        w.point = probe.point;
        w.residual = residual;
        w.detail = label;
        c.witness = std::move(w);
      }
      report.add(std::move(c));
    }
    {
      const MultivectorField xfg =
          hamiltonian_field(s, jacobi_bracket(s, f, g, policy), policy);
      const auto fz = field_is_zero(mv_sub(bracket, xfg), policy);
      CheckResult c{"pair-" + std::to_string(p) + "-morphism", fz.zero, fz.backend, std::nullopt};
      if (!fz.zero) {
        CheckWitness w;
        w.multi_index = fz.index;
        if (fz.witness) {
          w.point = fz.witness->point;
          w.residual = fz.witness->residual;
        }
        w.detail = label;
        c.witness = std::move(w);
      }
      report.add(std::move(c));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

bool finite_state(const std::vector<double>& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

// One RK4 step of size h from state x along the field components.
std::vector<double> rk4_step(const std::vector<Expr>& field, const std::vector<double>& x,
                             double h) {
  const std::size_t n = x.size();
  auto eval_field = [&](const std::vector<double>& y) {
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = evaluate(field[i], y);
    return d;
  };
  const auto k1 = eval_field(x);
  std::vector<double> tmp(n);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  const auto k2 = eval_field(tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  const auto k3 = eval_field(tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
  const auto k4 = eval_field(tmp);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

std::vector<double> integrate_final(const std::vector<Expr>& field, std::vector<double> x,
                                    double T, double h, bool& ok) {
  double t = 0.0;
  ok = true;
  while (t < T - 1e-15) {
    const double step = std::min(h, T - t);
    x = rk4_step(field, x, step);
    t += step;
    if (!finite_state(x)) {
      ok = false;
      return x;
    }
  }
  return x;
}

}  // namespace

Trajectory flow(const PartialJacobiStructure& s, const Expr& f, std::vector<double> x0, double T,
                double h, const ZeroPolicy& policy) {
  if (h <= 0.0) throw Error("step size must be positive");
  if (T < 0.0) throw Error("duration must be non-negative");
  if (static_cast<int>(x0.size()) != s.dim()) throw Error("initial point dimension mismatch");
  const auto field = hamiltonian_field(s, f, policy).components();

  Trajectory tr;
  tr.step = h;
  tr.samples.push_back({0.0, x0});
  double t = 0.0;
  std::vector<double> x = std::move(x0);
  while (t < T - 1e-15) {
    const double step = std::min(h, T - t);
    std::vector<double> next = rk4_step(field, x, step);
    if (!finite_state(next)) {
      tr.aborted = true;
      break;
    }
    t += step;
    x = std::move(next);
    tr.samples.push_back({t, x});
  }

  if (!tr.aborted && !tr.samples.empty()) {
    bool ok = false;
    const auto fine = integrate_final(field, tr.samples.front().state, t, h / 2.0, ok);
    if (ok) {
      double err = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        err = std::max(err, std::abs(x[i] - fine[i]));
      }
      tr.error_estimate = err / 15.0;  // Richardson, order 4
    }
  }
  return tr;
}

std::string trajectory_to_tsv(const Trajectory& tr) {
  std::ostringstream os;
  for (const auto& s : tr.samples) {
    os << format_double(s.time);
    for (double v : s.state) os << "\t" << format_double(v);
    os << "\n";
  }
  return os.str();
}

VerificationReport csi_probe(const PartialJacobiStructure& s,
                             const std::vector<std::vector<double>>& points, double tol) {
  VerificationReport report;
  std::vector<int> ranks;
  ranks.reserve(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (static_cast<int>(points[p].size()) != s.dim()) {
      throw Error("probe point dimension mismatch");
    }
    Eigen::MatrixXd m(s.dim(), static_cast<Eigen::Index>(s.flat.size()));
    for (int i = 0; i < s.dim(); ++i) {
      for (std::size_t b = 0; b < s.flat.size(); ++b) {
        m(i, static_cast<Eigen::Index>(b)) =
            evaluate(s.lambda_sharp[static_cast<std::size_t>(i)][b], points[p]);
      }
    }
    const int r = numerical_rank(m, tol);
    ranks.push_back(r);
    CheckWitness w;
    w.point = points[p];
    w.detail = "rank=" + std::to_string(r);
    report.add({"point-" + std::to_string(p), true, Backend::Sampled, std::move(w)});
  }
  bool constant = true;
  std::size_t first_drop = 0;
  for (std::size_t p = 1; p < ranks.size(); ++p) {
    if (ranks[p] != ranks[0]) {
      constant = false;
      first_drop = p;
      break;
    }
  }
  CheckResult c{"rank-constant", constant, Backend::Sampled, std::nullopt};
  if (!constant) {
    CheckWitness w;
    w.point = points[first_drop];
    w.detail = "rank changes from " + std::to_string(ranks[0]) + " to " +
               std::to_string(ranks[first_drop]);
    c.witness = std::move(w);
  }
  report.add(std::move(c));
  return report;
}

}  // namespace jacobikit

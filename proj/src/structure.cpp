#include "jacobikit/structure.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "jacobikit/errors.hpp"
#include "jacobikit/polyform.hpp"

namespace jacobikit {

void PartialJacobiStructure::regenerate_sources() {
  lambda_source.clear();
  reeb_source.clear();
  for (const auto& row : lambda_sharp) {
    std::vector<std::string> srow;
    srow.reserve(row.size());
    for (const auto& e : row) srow.push_back(to_string(e));
    lambda_source.push_back(std::move(srow));
  }
  for (const auto& e : reeb) reeb_source.push_back(to_string(e));
}

bool PartialJacobiStructure::in_flat(int i) const {
  return std::binary_search(flat.begin(), flat.end(), i);
}

int PartialJacobiStructure::flat_column(int coordinate) const {
  auto it = std::lower_bound(flat.begin(), flat.end(), coordinate);
  if (it == flat.end() || *it != coordinate) return -1;
  return static_cast<int>(it - flat.begin());
}

const Expr& PartialJacobiStructure::lambda_entry(int i, int j) const {
  const int col = flat_column(j);
  if (col < 0) throw Error("lambda_sharp column requested for a coordinate outside S");
  return lambda_sharp[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
}

MultivectorField PartialJacobiStructure::lambda_bivector() const {
  MultivectorField out(chart, 2);
  for (std::size_t a = 0; a < flat.size(); ++a) {
    for (std::size_t b = a + 1; b < flat.size(); ++b) {
      const int i = flat[a];
      const int j = flat[b];
      const Expr& c = lambda_sharp[static_cast<std::size_t>(i)][b];
      if (!is_zero_constant(c)) out.set_coefficient({i, j}, c);
    }
  }
  return out.pruned();
}

MultivectorField PartialJacobiStructure::reeb_field() const {
  return MultivectorField::vector_field(chart, reeb);
}

MultivectorField PartialJacobiStructure::reeb_field_flat() const {
  std::vector<Expr> comps(static_cast<std::size_t>(dim()), make_constant(chart, Rational(0)));
  for (int i : flat) comps[static_cast<std::size_t>(i)] = reeb[static_cast<std::size_t>(i)];
  return MultivectorField::vector_field(chart, std::move(comps));
}

// ---------------------------------------------------------------------------
// Membership, bracket, Hamiltonian fields.

bool algebra_member(const Expr& f, const PartialJacobiStructure& s, const ZeroPolicy& policy,
                    int* failing_coordinate) {
  if (!same_chart(f->chart, s.chart)) {
    throw ChartMismatchError("function lives on a different chart than the structure");
  }
  for (int i = 0; i < s.dim(); ++i) {
    if (s.in_flat(i)) continue;
    const auto outcome = check_zero_auto(differentiate(f, i), policy);
    if (!outcome.zero) {
      if (failing_coordinate) *failing_coordinate = i;
      return false;
    }
  }
  return true;
}

void require_member(const Expr& f, const PartialJacobiStructure& s, const ZeroPolicy& policy,
                    const std::string& argument_name) {
  int bad = -1;
  if (!algebra_member(f, s, policy, &bad)) {
    throw MembershipError("argument " + argument_name + " = `" + to_string(f) +
                              "` is outside the function algebra: nonzero partial along " +
                              s.chart->name(bad),
                          bad);
  }
}

namespace {

// (Lambda# dg)^i over the flat columns only.
Expr lambda_sharp_apply_row(const PartialJacobiStructure& s, int row,
                            const std::vector<Expr>& dg_flat) {
  std::vector<Expr> terms;
  for (std::size_t b = 0; b < s.flat.size(); ++b) {
    const Expr& entry = s.lambda_sharp[static_cast<std::size_t>(row)][b];
    if (is_zero_constant(entry) || is_zero_constant(dg_flat[b])) continue;
    terms.push_back(mul(entry, dg_flat[b]));
  }
  if (terms.empty()) return make_constant(s.chart, Rational(0));
  return make_sum(std::move(terms));
}

// Row i of Lambda(df, .): the bundle map with the differential in the
// first slot, which is the map Hamiltonian fields are built from.
// Equals minus the stored column application on the S block; the rows
// outside S are carried along with the same sign.
Expr lambda_first_slot_row(const PartialJacobiStructure& s, int row,
                           const std::vector<Expr>& df_flat) {
  return negate(lambda_sharp_apply_row(s, row, df_flat));
}

Expr reeb_apply(const PartialJacobiStructure& s, const Expr& g) {
  std::vector<Expr> terms;
  for (int i = 0; i < s.dim(); ++i) {
    const Expr& e = s.reeb[static_cast<std::size_t>(i)];
    if (is_zero_constant(e)) continue;
    Expr dg = differentiate(g, i);
    if (is_zero_constant(dg)) continue;
    terms.push_back(mul(e, std::move(dg)));
  }
  if (terms.empty()) return make_constant(s.chart, Rational(0));
  return make_sum(std::move(terms));
}

Expr canonical_or_raw(const Expr& e) {
  if (auto p = poly_normalize(e)) return p->to_expr(e->chart);
  return e;
}

}  // namespace

Expr jacobi_bracket(const PartialJacobiStructure& s, const Expr& f, const Expr& g,
                    const ZeroPolicy& policy) {
  require_member(f, s, policy, "f");
  require_member(g, s, policy, "g");

  std::vector<Expr> df_flat;
  std::vector<Expr> dg_flat;
  df_flat.reserve(s.flat.size());
  dg_flat.reserve(s.flat.size());
  for (int j : s.flat) {
    df_flat.push_back(differentiate(f, j));
    dg_flat.push_back(differentiate(g, j));
  }

  std::vector<Expr> terms;
  for (std::size_t a = 0; a < s.flat.size(); ++a) {
    if (is_zero_constant(df_flat[a])) continue;
    Expr row = lambda_sharp_apply_row(s, s.flat[a], dg_flat);
    if (is_zero_constant(row)) continue;
    terms.push_back(mul(df_flat[a], std::move(row)));
  }
  terms.push_back(mul(f, reeb_apply(s, g)));
  terms.push_back(negate(mul(g, reeb_apply(s, f))));
  Expr out = canonical_or_raw(make_sum(std::move(terms)));

  int bad = -1;
  if (!algebra_member(out, s, policy, &bad)) {
    throw MembershipError("bracket left the function algebra along " + s.chart->name(bad), bad);
  }
  return out;
}

MultivectorField hamiltonian_field(const PartialJacobiStructure& s, const Expr& f,
                                   const ZeroPolicy& policy) {
  require_member(f, s, policy, "f");
  std::vector<Expr> df_flat;
  df_flat.reserve(s.flat.size());
  for (int j : s.flat) df_flat.push_back(differentiate(f, j));

  std::vector<Expr> comps;
  comps.reserve(static_cast<std::size_t>(s.dim()));
  for (int i = 0; i < s.dim(); ++i) {
    Expr v = add(lambda_first_slot_row(s, i, df_flat),
                 mul(f, s.reeb[static_cast<std::size_t>(i)]));
    comps.push_back(canonical_or_raw(v));
  }
  return MultivectorField::vector_field(s.chart, std::move(comps)).pruned();
}

// ---------------------------------------------------------------------------
// Verification.

namespace {

Backend weaker(Backend a, Backend b) {
  if (a == Backend::Sampled || b == Backend::Sampled) return Backend::Sampled;
  if (a == Backend::ExactExp || b == Backend::ExactExp) return Backend::ExactExp;
  return Backend::Exact;
}

std::optional<CheckWitness> witness_from(const FieldZeroOutcome& fz) {
  if (fz.zero) return std::nullopt;
  CheckWitness w;
  w.multi_index = fz.index;
  if (fz.witness) {
    w.point = fz.witness->point;
    w.residual = fz.witness->residual;
  }
  return w;
}

}  // namespace

Expr random_flat_polynomial(const PartialJacobiStructure& s, SampleGen& gen, int max_degree) {
  const int n = s.dim();
  PolyForm acc(n);
  const int nterms = gen.uniform_int(1, 3);
  for (int t = 0; t < nterms; ++t) {
    PolyForm::Monomial mono(static_cast<std::size_t>(n), 0);
    if (!s.flat.empty()) {
      const int deg = gen.uniform_int(0, max_degree);
      for (int d = 0; d < deg; ++d) {
        const int j = s.flat[static_cast<std::size_t>(
            gen.uniform_int(0, static_cast<int>(s.flat.size()) - 1))];
        ++mono[static_cast<std::size_t>(j)];
      }
    }
    acc.add_term(mono, gen.small_rational());
  }
  if (acc.is_zero()) acc = PolyForm::constant(n, Rational(1));
  return acc.to_expr(s.chart);
}

VerificationReport verify_structure(const PartialJacobiStructure& s, const RunConfig& cfg) {
  VerificationReport report;
  const ZeroPolicy policy = cfg.zero_policy();
  const MultivectorField lambda = s.lambda_bivector();
  const MultivectorField reeb_flat = s.reeb_field_flat();

  {
    MultivectorField residual =
        mv_sub(schouten(lambda, lambda, cfg.exec), mv_scale(Rational(2), wedge(reeb_flat, lambda)));
    const auto fz = field_is_zero(residual, policy);
    report.add({"vjp1-compatibility", fz.zero, fz.backend, witness_from(fz)});
  }
  {
    MultivectorField residual = lie_derivative(reeb_flat, lambda, cfg.exec);
    const auto fz = field_is_zero(residual, policy);
    report.add({"vjp2-invariance", fz.zero, fz.backend, witness_from(fz)});
  }

  SampleGen gen(cfg.seed);
  {
    CheckResult check{"jacobi-identity", true, Backend::Exact, std::nullopt};
    for (int t = 0; t < cfg.trials; ++t) {
      const Expr f = random_flat_polynomial(s, gen, cfg.degree);
      const Expr g = random_flat_polynomial(s, gen, cfg.degree);
      const Expr h = random_flat_polynomial(s, gen, cfg.degree);
      Expr cyc = make_sum({jacobi_bracket(s, f, jacobi_bracket(s, g, h, policy), policy),
                           jacobi_bracket(s, g, jacobi_bracket(s, h, f, policy), policy),
                           jacobi_bracket(s, h, jacobi_bracket(s, f, g, policy), policy)});
      const auto z = check_zero_auto(cyc, policy);
      check.backend = weaker(check.backend, z.backend);
      if (!z.zero) {
        check.passed = false;
        CheckWitness w;
        if (z.witness) {
          w.point = z.witness->point;
          w.residual = z.witness->residual;
        }
        w.detail = "trial " + std::to_string(t) + ": f=`" + to_string(f) + "` g=`" + to_string(g) +
                   "` h=`" + to_string(h) + "`";
        check.witness = std::move(w);
        break;
      }
    }
    report.add(std::move(check));
  }
  {
    CheckResult check{"hamiltonian-morphism", true, Backend::Exact, std::nullopt};
    for (int t = 0; t < cfg.trials; ++t) {
      const Expr f = random_flat_polynomial(s, gen, cfg.degree);
      const Expr g = random_flat_polynomial(s, gen, cfg.degree);
      const MultivectorField xf = hamiltonian_field(s, f, policy);
      const MultivectorField xg = hamiltonian_field(s, g, policy);
      const MultivectorField xfg = hamiltonian_field(s, jacobi_bracket(s, f, g, policy), policy);
      MultivectorField residual = mv_sub(schouten(xf, xg, cfg.exec), xfg);
      const auto fz = field_is_zero(residual, policy);
      check.backend = weaker(check.backend, fz.backend);
      if (!fz.zero) {
        check.passed = false;
        auto w = witness_from(fz);
        if (w) {
          w->detail = "trial " + std::to_string(t) + ": f=`" + to_string(f) + "` g=`" +
                      to_string(g) + "`";
        }
        check.witness = std::move(w);
        break;
      }
    }
    report.add(std::move(check));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Conformal transforms and Jacobi maps.

PartialJacobiStructure conformal_transform(const PartialJacobiStructure& s, const Expr& phi,
                                           const RunConfig& cfg) {
  const ZeroPolicy policy = cfg.zero_policy();
  require_member(phi, s, policy, "phi");
  const auto points = sample_points(cfg.samples, s.dim(), cfg.seed);
  for (const auto& p : points) {
    const double v = evaluate(phi, p);
    if (std::abs(v) <= cfg.tol) {
      std::ostringstream os;
      os << "conformal factor vanishes at sample point (";
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << ",";
        os << format_double(p[i]);
      }
      os << ")";
      throw Error(os.str());
    }
  }

  PartialJacobiStructure out;
  out.chart = s.chart;
  out.flat = s.flat;
  out.name = s.name.empty() ? "conformal" : s.name + " (conformal)";
  out.lambda_sharp.resize(static_cast<std::size_t>(s.dim()));
  std::vector<Expr> dphi_flat;
  dphi_flat.reserve(s.flat.size());
  for (int j : s.flat) dphi_flat.push_back(differentiate(phi, j));
  for (int i = 0; i < s.dim(); ++i) {
    auto& row = out.lambda_sharp[static_cast<std::size_t>(i)];
    row.reserve(s.flat.size());
    for (std::size_t b = 0; b < s.flat.size(); ++b) {
      row.push_back(canonical_or_raw(mul(phi, s.lambda_sharp[static_cast<std::size_t>(i)][b])));
    }
    out.reeb.push_back(canonical_or_raw(add(mul(phi, s.reeb[static_cast<std::size_t>(i)]),
                                            lambda_first_slot_row(s, i, dphi_flat))));
  }
  out.regenerate_sources();
  return out;
}

VerificationReport jacobi_map_check(const PartialJacobiStructure& src,
                                    const PartialJacobiStructure& dst,
                                    const std::vector<Expr>& map, int tests,
                                    const RunConfig& cfg) {
  if (static_cast<int>(map.size()) != dst.dim()) {
    throw Error("map must provide one expression per target coordinate");
  }
  for (const auto& m : map) {
    if (!same_chart(m->chart, src.chart)) {
      throw ChartMismatchError("map components must live on the source chart");
    }
  }
  const ZeroPolicy policy = cfg.zero_policy();
  VerificationReport report;
  SampleGen gen(cfg.seed);
  for (int t = 0; t < tests; ++t) {
    const Expr f = random_flat_polynomial(dst, gen, cfg.degree);
    const Expr g = random_flat_polynomial(dst, gen, cfg.degree);
    const Expr pf = substitute(f, map);
    const Expr pg = substitute(g, map);
    const std::string name = "pair-" + std::to_string(t);

    int bad = -1;
    if (!algebra_member(pf, src, policy, &bad) ||
        (bad = -1, !algebra_member(pg, src, policy, &bad))) {
      CheckWitness w;
      w.detail = "pullback leaves the source algebra along " + src.chart->name(bad) + ": f=`" +
                 to_string(f) + "` g=`" + to_string(g) + "`";
      report.add({name, false, Backend::Sampled, std::move(w)});
      continue;
    }

    const Expr lhs = jacobi_bracket(src, pf, pg, policy);
    const Expr rhs = substitute(jacobi_bracket(dst, f, g, policy), map);
    const auto z =
        expr_is_zero(sub(lhs, rhs), SampledStrategy{cfg.samples, cfg.seed, cfg.tol}, cfg.exec);
    if (z.zero) {
      report.add({name, true, Backend::Sampled, std::nullopt});
    } else {
      CheckWitness w;
      if (z.witness) {
        w.point = z.witness->point;
        w.residual = z.witness->residual;
      }
      w.detail = "f=`" + to_string(f) + "` g=`" + to_string(g) + "`";
      report.add({name, false, Backend::Sampled, std::move(w)});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Document I/O.

namespace {

const nlohmann::json& require_field(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw StructureError(std::string("schema violation: missing field `") + key + "`");
  return *it;
}

}  // namespace

PartialJacobiStructure structure_from_json(const nlohmann::json& doc, const ZeroPolicy& policy) {
  if (!doc.is_object()) throw StructureError("schema violation: document must be an object");

  const auto& jdim = require_field(doc, "dimension");
  if (!jdim.is_number_integer()) throw StructureError("schema violation: dimension must be an integer");
  const int n = jdim.get<int>();
  if (n < 1) throw StructureError("schema violation: dimension must be positive");

  const auto& jcoords = require_field(doc, "coordinates");
  if (!jcoords.is_array() || static_cast<int>(jcoords.size()) != n) {
    throw StructureError("schema violation: coordinates must list one name per dimension");
  }
  std::vector<std::string> names;
  for (const auto& c : jcoords) {
    if (!c.is_string()) throw StructureError("schema violation: coordinate names must be strings");
    names.push_back(c.get<std::string>());
  }

  PartialJacobiStructure s;
  s.chart = make_chart(std::move(names));

  const auto& jflat = require_field(doc, "flat");
  if (!jflat.is_array()) throw StructureError("schema violation: flat must be an integer list");
  for (const auto& v : jflat) {
    if (!v.is_number_integer()) throw StructureError("schema violation: flat entries must be integers");
    const int i = v.get<int>();
    if (i < 0 || i >= n) throw StructureError("schema violation: flat index out of range");
    s.flat.push_back(i);
  }
  std::sort(s.flat.begin(), s.flat.end());
  if (std::adjacent_find(s.flat.begin(), s.flat.end()) != s.flat.end()) {
    throw StructureError("schema violation: repeated flat index");
  }

  const auto& jl = require_field(doc, "lambda_sharp");
  if (!jl.is_array() || static_cast<int>(jl.size()) != n) {
    throw StructureError("schema violation: lambda_sharp must have one row per dimension");
  }
  for (const auto& jrow : jl) {
    if (!jrow.is_array() || jrow.size() != s.flat.size()) {
      throw StructureError("schema violation: lambda_sharp rows must have one column per flat index");
    }
    std::vector<Expr> row;
    std::vector<std::string> srow;
    for (const auto& cell : jrow) {
      if (!cell.is_string()) throw StructureError("schema violation: lambda_sharp entries must be strings");
      srow.push_back(cell.get<std::string>());
      row.push_back(parse_expr(srow.back(), s.chart));
    }
    s.lambda_sharp.push_back(std::move(row));
    s.lambda_source.push_back(std::move(srow));
  }

  const auto& jr = require_field(doc, "reeb");
  if (!jr.is_array() || static_cast<int>(jr.size()) != n) {
    throw StructureError("schema violation: reeb must have one entry per dimension");
  }
  for (const auto& cell : jr) {
    if (!cell.is_string()) throw StructureError("schema violation: reeb entries must be strings");
    s.reeb_source.push_back(cell.get<std::string>());
    s.reeb.push_back(parse_expr(s.reeb_source.back(), s.chart));
  }

  if (auto it = doc.find("name"); it != doc.end() && it->is_string()) {
    s.name = it->get<std::string>();
  }

  // Antisymmetry on the S x S block.
  for (std::size_t a = 0; a < s.flat.size(); ++a) {
    for (std::size_t b = a; b < s.flat.size(); ++b) {
      const int i = s.flat[a];
      const int j = s.flat[b];
      const Expr sum = add(s.lambda_sharp[static_cast<std::size_t>(i)][b],
                           s.lambda_sharp[static_cast<std::size_t>(j)][a]);
      if (!check_zero_auto(sum, policy).zero) {
        throw StructureError("lambda_sharp antisymmetry fails at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
      }
    }
  }

  // Closure: S x S entries and flat reeb components belong to the algebra.
  for (std::size_t a = 0; a < s.flat.size(); ++a) {
    const int i = s.flat[a];
    for (std::size_t b = 0; b < s.flat.size(); ++b) {
      int bad = -1;
      if (!algebra_member(s.lambda_sharp[static_cast<std::size_t>(i)][b], s, policy, &bad)) {
        throw StructureError("closure fails: lambda_sharp[" + std::to_string(i) + "][" +
                             std::to_string(s.flat[b]) + "] has nonzero partial along " +
                             s.chart->name(bad));
      }
    }
    int bad = -1;
    if (!algebra_member(s.reeb[static_cast<std::size_t>(i)], s, policy, &bad)) {
      throw StructureError("closure fails: reeb[" + std::to_string(i) +
                           "] has nonzero partial along " + s.chart->name(bad));
    }
  }
  return s;
}

nlohmann::ordered_json structure_to_json(const PartialJacobiStructure& s) {
  PartialJacobiStructure copy;
  const PartialJacobiStructure* src = &s;
  if (s.lambda_source.size() != s.lambda_sharp.size() || s.reeb_source.size() != s.reeb.size()) {
    copy = s;
    copy.regenerate_sources();
    src = &copy;
  }
  nlohmann::ordered_json out;
  if (!src->name.empty()) out["name"] = src->name;
  out["dimension"] = src->dim();
  out["coordinates"] = src->chart->names();
  out["flat"] = src->flat;
  out["lambda_sharp"] = src->lambda_source;
  out["reeb"] = src->reeb_source;
  return out;
}

PartialJacobiStructure load_structure_file(const std::string& path, const ZeroPolicy& policy) {
  std::ifstream in(path);
  if (!in) throw StructureError("cannot read structure file `" + path + "`");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw StructureError("invalid structure document: " + std::string(e.what()));
  }
  return structure_from_json(doc, policy);
}

void save_structure_file(const PartialJacobiStructure& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write structure file `" + path + "`");
  out << structure_to_json(s).dump(2) << "\n";
}

}  // namespace jacobikit

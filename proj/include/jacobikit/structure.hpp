#ifndef JACOBIKIT_STRUCTURE_HPP
#define JACOBIKIT_STRUCTURE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "jacobikit/multivector.hpp"
#include "jacobikit/report.hpp"
#include "jacobikit/rng.hpp"
#include "jacobikit/zerocheck.hpp"

namespace jacobikit {

// Run parameters shared by the verification entry points and the CLI.
struct RunConfig {
  std::uint64_t seed = 1;
  int samples = 200;
  double tol = 1e-9;
  int trials = 50;
  int degree = 3;
  ExecPolicy exec = kDefaultExec;

  ZeroPolicy zero_policy() const { return ZeroPolicy{samples, seed, tol, exec}; }
};

// A partial Jacobi structure in a single chart: the flat index set S
// models the constant coordinate subbundle spanned by {dx^i : i in S},
// lambda_sharp is the n x |S| matrix of the bundle map (column order =
// ascending S), and reeb is the distinguished vector field. The S x S
// block of lambda_sharp carries the bivector; rows outside S only ever
// feed Hamiltonian fields.
class PartialJacobiStructure {
public:
  ChartPtr chart;
  std::vector<int> flat;                        // ascending
  std::vector<std::vector<Expr>> lambda_sharp;  // n rows, |S| columns
  std::vector<Expr> reeb;                       // n components
  std::string name;
  // Expression text as loaded (or as generated), so that a load/save
  // cycle preserves the document byte for byte modulo formatting.
  std::vector<std::vector<std::string>> lambda_source;
  std::vector<std::string> reeb_source;

  // Fill the source strings from the parsed expressions.
  void regenerate_sources();

  int dim() const { return chart->dim(); }
  bool in_flat(int i) const;
  int flat_column(int coordinate) const;  // -1 when not in S

  // lambda_sharp entry by coordinate pair (row i, column = position of j in S).
  const Expr& lambda_entry(int i, int j) const;

  // Bivector with coefficients lambda_sharp[i][j], i<j in S, zero
  // outside S.
  MultivectorField lambda_bivector() const;
  MultivectorField reeb_field() const;
  // Reeb field with components outside S zeroed: the restriction that
  // pairs against flat covectors in the compatibility checks.
  MultivectorField reeb_field_flat() const;

  Expr parse_on_chart(std::string_view text) const { return parse_expr(text, chart); }
};

// Document I/O. The canonical serialization is a JSON object with the
// fields name (optional), dimension, coordinates, flat, lambda_sharp,
// reeb; expression strings are preserved verbatim on a load/save
// round trip.
PartialJacobiStructure structure_from_json(const nlohmann::json& doc,
                                           const ZeroPolicy& policy = {});
nlohmann::ordered_json structure_to_json(const PartialJacobiStructure& s);
PartialJacobiStructure load_structure_file(const std::string& path,
                                           const ZeroPolicy& policy = {});
void save_structure_file(const PartialJacobiStructure& s, const std::string& path);

// Membership in the function algebra of the flat subbundle: all
// partials in non-S directions vanish identically. For constant
// coordinate subbundles this first-order test implies the all-orders
// condition by symmetry of mixed partials.
bool algebra_member(const Expr& f, const PartialJacobiStructure& s,
                    const ZeroPolicy& policy = {}, int* failing_coordinate = nullptr);

void require_member(const Expr& f, const PartialJacobiStructure& s, const ZeroPolicy& policy,
                    const std::string& argument_name);

// {f,g} = Lambda(df,dg) + f E(g) - g E(f); both arguments are checked
// for membership and the result is again a member.
Expr jacobi_bracket(const PartialJacobiStructure& s, const Expr& f, const Expr& g,
                    const ZeroPolicy& policy = {});

// X_f = Lambda#(df) + f E.
MultivectorField hamiltonian_field(const PartialJacobiStructure& s, const Expr& f,
                                   const ZeroPolicy& policy = {});

// Four checks: the two compatibility conditions, the Jacobi identity
// on random triples from the algebra, and the Hamiltonian morphism
// identity on random pairs.
VerificationReport verify_structure(const PartialJacobiStructure& s, const RunConfig& cfg);

// Rescaled structure: lambda -> phi lambda, reeb -> phi reeb + Lambda#(d phi).
PartialJacobiStructure conformal_transform(const PartialJacobiStructure& s, const Expr& phi,
                                           const RunConfig& cfg);

// Pullback membership and bracket equality for `tests` random pairs
// from the target algebra; `map` lists the target coordinates as
// expressions over the source chart.
VerificationReport jacobi_map_check(const PartialJacobiStructure& src,
                                    const PartialJacobiStructure& dst,
                                    const std::vector<Expr>& map, int tests,
                                    const RunConfig& cfg);

// Random polynomial in the S-coordinates of `s` (monomials with small
// rational coefficients, total degree <= max_degree).
Expr random_flat_polynomial(const PartialJacobiStructure& s, SampleGen& gen, int max_degree);

}  // namespace jacobikit

#endif

#ifndef JACOBIKIT_MULTIVECTOR_HPP
#define JACOBIKIT_MULTIVECTOR_HPP

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "jacobikit/expr.hpp"
#include "jacobikit/parallel.hpp"
#include "jacobikit/zerocheck.hpp"

namespace jacobikit {

// Antisymmetric k-contravariant tensor field: coefficients indexed by
// strictly increasing k-tuples of coordinate indices. Degree 0 is a
// single scalar expression, degree 1 a vector field. Zero
// coefficients are pruned after every operation so that the exact
// equality-to-zero test is an empty-map check.
class MultivectorField {
public:
  using IndexTuple = std::vector<int>;

  MultivectorField(ChartPtr chart, int degree);

  static MultivectorField scalar(ChartPtr chart, Expr f);
  static MultivectorField vector_field(ChartPtr chart, std::vector<Expr> components);

  const ChartPtr& chart() const noexcept { return chart_; }
  int degree() const noexcept { return degree_; }
  int dim() const noexcept { return chart_->dim(); }
  bool is_empty() const noexcept { return coeffs_.empty(); }
  const std::map<IndexTuple, Expr>& coefficients() const noexcept { return coeffs_; }

  // Coefficient at a strictly increasing tuple (zero expr if absent).
  Expr coefficient(std::span<const int> increasing) const;

  // Signed lookup: arbitrary index order, zero on repeats. This is
  // the value on the corresponding coordinate differentials.
  Expr signed_coefficient(std::span<const int> indices) const;

  void set_coefficient(IndexTuple increasing, Expr value);
  // Accumulate a term with arbitrary index order (sorted with sign).
  void add_term(IndexTuple indices, Expr value);

  Expr scalar_value() const;                  // degree 0
  std::vector<Expr> components() const;       // degree 1, dense

  // Drop coefficients whose canonical polynomial (or exp-factored
  // polynomial, if exp_coord >= 0) form is zero, and rebuild the
  // survivors in canonical form where available.
  MultivectorField pruned(int exp_coord = -1) const;

private:
  ChartPtr chart_;
  int degree_;
  std::map<IndexTuple, Expr> coeffs_;
};

// P(df_1, ..., df_k): multilinear and alternating in the arguments.
Expr mv_apply(const MultivectorField& P, std::span<const Expr> fs);

MultivectorField wedge(const MultivectorField& P, const MultivectorField& Q);

// First-slot contraction with df: the degree-0 bracket [P, f].
// Degree-0 P yields the zero scalar.
MultivectorField contract_df(const MultivectorField& P, const Expr& f);

// Schouten bracket, defined through commutators of the alternating
// derivations the fields induce; coefficients are extracted by
// applying the commutator to coordinate functions. Degree-0 operands
// route through contract_df with the sign rule [f,P] = (-1)^deg(P) [P,f].
MultivectorField schouten(const MultivectorField& P, const MultivectorField& Q,
                          ExecPolicy exec = kDefaultExec);

// L_X P = [X, P]; X(f) for degree 0.
MultivectorField lie_derivative(const MultivectorField& X, const MultivectorField& P,
                                ExecPolicy exec = kDefaultExec);

MultivectorField mv_add(const MultivectorField& A, const MultivectorField& B);
MultivectorField mv_sub(const MultivectorField& A, const MultivectorField& B);
MultivectorField mv_scale(const Rational& c, const MultivectorField& A);
MultivectorField mv_scale_expr(const Expr& f, const MultivectorField& A);

// Coefficientwise zero test. Reports the weakest backend used across
// coefficients and, on failure, the offending multi-index (plus the
// sample witness when the sampled backend decided it).
struct FieldZeroOutcome {
  bool zero = true;
  Backend backend = Backend::Exact;
  std::optional<std::vector<int>> index;
  std::optional<SampleWitness> witness;
};

FieldZeroOutcome field_is_zero(const MultivectorField& A, const ZeroPolicy& policy,
                               int exp_coord = -1);

}  // namespace jacobikit

#endif

#ifndef JACOBIKIT_CATALOG_HPP
#define JACOBIKIT_CATALOG_HPP

#include <vector>

#include "jacobikit/structure.hpp"

namespace jacobikit {

// Antisymmetric structure constants c_{ij}^k of a finite-dimensional
// Lie algebra. Validated on construction: antisymmetry in (i,j) and
// the Jacobi identity of the constants.
class StructureConstants {
public:
  StructureConstants(int n, std::vector<Rational> flattened);  // c[(i*n+j)*n+k]
  static StructureConstants so3();

  int dim() const noexcept { return n_; }
  const Rational& at(int i, int j, int k) const;

private:
  int n_;
  std::vector<Rational> c_;
};

// Built-in structures. Every constructor returns a structure whose
// verification passes with the exact backend.

// Chart (x0..x_{2m}), E = d/dx0, Lambda coupling x^i with x^{m+i}.
PartialJacobiStructure standard_jacobi(int m);  // m >= 1
// Same construction at truncation level m >= 0 (level 0 carries only
// the Reeb direction). Used by the direct-limit machinery.
PartialJacobiStructure standard_jacobi_level(int m);

// Chart (t, q^1..q^m, p_1..p_m) with the canonical contact form.
PartialJacobiStructure contact_canonical(int m);  // m >= 1

// First-jet chart (x^1..x^n, u, u_1..u_n), E = d/du, Lambda built from
// the Cartan fields d/dx^i + u_i d/du.
PartialJacobiStructure one_jet(int n);  // n >= 1

// Linear structure on the dual of a Lie algebra: Lambda^{ij} = c_{ij}^k x_k, E = 0.
PartialJacobiStructure lie_poisson(const StructureConstants& sc);

// Extended cotangent bundle of R^m with the canonical symplectic form
// and eta = dt. Poisson structure (reeb = 0) plus the distinguished
// field E = flat^{-1}(eta) solved from the constant flat map.
struct CosymplecticStructure {
  PartialJacobiStructure structure;
  std::vector<Expr> distinguished_field;  // E, satisfies L_E P = 0
};
CosymplecticStructure cosymplectic_extended_cotangent(int m);  // m >= 1

}  // namespace jacobikit

#endif

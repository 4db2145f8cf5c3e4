#ifndef JACOBIKIT_HOMOGENIZE_HPP
#define JACOBIKIT_HOMOGENIZE_HPP

#include "jacobikit/structure.hpp"

namespace jacobikit {

// Homogeneous partial Poisson structure on the trivial line bundle
// over the base: extended chart with the fiber coordinate last,
// homothety field Z = d/dt, bivector exp(-t) * (Lambda + dt ^ E),
// vanishing Reeb field.
struct HomogeneousPoissonStructure {
  PartialJacobiStructure base;
  PartialJacobiStructure hat;  // extended structure, reeb = 0
  int t_index = -1;            // index of the fiber coordinate

  MultivectorField lambda_hat() const;  // the bivector of `hat`
  MultivectorField homothety() const;   // Z = d/dt
  Expr exp_minus_t() const;
  Expr exp_plus_t() const;
};

HomogeneousPoissonStructure poissonize(const PartialJacobiStructure& base);

// Degree-1 homogeneous lift exp(t) * (f o projection).
Expr hat_lift(const HomogeneousPoissonStructure& hps, const Expr& f_over_base,
              const ZeroPolicy& policy = {});

// Reinterpret a base expression on the extended chart (indices are
// unchanged; the fiber coordinate is appended last).
Expr extend_to_hat(const HomogeneousPoissonStructure& hps, const Expr& f_over_base);

// Three checks: the lifted bivector is Poisson, it is homogeneous of
// degree -1 along Z (both exact after factoring the exponential
// prefactor when the base is polynomial), and lifting intertwines the
// brackets on random pairs from the base algebra (sampled).
VerificationReport verify_homogeneous(const HomogeneousPoissonStructure& hps,
                                      const RunConfig& cfg);

}  // namespace jacobikit

#endif

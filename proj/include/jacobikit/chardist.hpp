#ifndef JACOBIKIT_CHARDIST_HPP
#define JACOBIKIT_CHARDIST_HPP

#include <string>
#include <utility>
#include <vector>

#include "jacobikit/structure.hpp"

namespace jacobikit {

// Pointwise probe of the characteristic distribution spanned by the
// Hamiltonian fields of a generating family.
struct DistributionProbe {
  PartialJacobiStructure structure;
  std::vector<Expr> family;   // members of the function algebra
  std::vector<double> point;  // evaluation point
  double tol = 1e-8;          // singular value cutoff, relative
};

// Default family: the constant 1 (whose field is the Reeb field)
// plus the S-coordinates. Validates membership of every member.
DistributionProbe make_standard_probe(const PartialJacobiStructure& s, std::vector<double> point,
                                      double tol = 1e-8, const ZeroPolicy& policy = {});

// Numerical rank of the matrix whose columns are the Hamiltonian
// fields of the family at the probe point.
int char_rank(const DistributionProbe& probe, const ZeroPolicy& policy = {});

// Per pair (f,g): the bracket field [X_f, X_g] at the probe point must
// lie in the span of the family's fields (least-squares residual), and
// the stronger identity [X_f, X_g] = X_{{f,g}} must hold as fields.
VerificationReport involutivity_check(const DistributionProbe& probe,
                                      const std::vector<std::pair<Expr, Expr>>& pairs,
                                      const RunConfig& cfg);

struct Trajectory {
  struct Sample {
    double time = 0.0;
    std::vector<double> state;
  };
  std::vector<Sample> samples;  // strictly increasing times
  double step = 0.0;
  std::string integrator = "rk4";
  bool aborted = false;          // hit a non-finite state
  double error_estimate = 0.0;   // step-halving estimate at the final time
};

// Classic fixed-step fourth-order Runge-Kutta on the Hamiltonian
// field of f. Aborts at the last good time on blow-up.
Trajectory flow(const PartialJacobiStructure& s, const Expr& f, std::vector<double> x0, double T,
                double h, const ZeroPolicy& policy = {});

// Tab-separated table, one row per sample: t x0 x1 ... xn, 17
// significant digits.
std::string trajectory_to_tsv(const Trajectory& tr);

// Rank of im Lambda# at each point and a constancy flag across the
// probe set.
VerificationReport csi_probe(const PartialJacobiStructure& s,
                             const std::vector<std::vector<double>>& points, double tol = 1e-8);

}  // namespace jacobikit

#endif

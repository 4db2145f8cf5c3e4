#ifndef JACOBIKIT_ZEROCHECK_HPP
#define JACOBIKIT_ZEROCHECK_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jacobikit/expr.hpp"
#include "jacobikit/parallel.hpp"

namespace jacobikit {

// Everything the verification layer does reduces to deciding whether
// an expression is identically zero.
//
// Exact: canonical polynomial form must be empty (error if the input
// is not polynomial).
// Sampled: |f(p)| <= tol * (1 + max |subterm(p)|) at `count` points
// drawn uniformly from [-1,1]^n with the given seed.

struct ExactStrategy {};

struct SampledStrategy {
  int count = 200;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

using ZeroStrategy = std::variant<ExactStrategy, SampledStrategy>;

enum class Backend { Exact, Sampled, ExactExp };

std::string backend_name(Backend b);

struct SampleWitness {
  std::vector<double> point;
  double residual = 0.0;
  double scale = 1.0;  // 1 + max |subterm|
};

struct ZeroCheckOutcome {
  bool zero = false;
  Backend backend = Backend::Exact;
  std::optional<SampleWitness> witness;  // set on sampled failure
};

ZeroCheckOutcome expr_is_zero(const Expr& e, const ZeroStrategy& strategy,
                              ExecPolicy exec = kDefaultExec);

// Shared configuration for checks that pick the backend themselves:
// Exact when the expression is polynomial, Sampled otherwise.
struct ZeroPolicy {
  int samples = 200;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  ExecPolicy exec = kDefaultExec;

  SampledStrategy sampled() const { return SampledStrategy{samples, seed, tol}; }
};

ZeroCheckOutcome check_zero_auto(const Expr& e, const ZeroPolicy& policy);

// Exp-aware variant: tries the polynomial backend, then the
// exp-factored backend for the designated coordinate, then sampling.
ZeroCheckOutcome check_zero_auto_exp(const Expr& e, int exp_coord, const ZeroPolicy& policy);

// Kernel shared by the sampled strategy: residual and subterm scale
// of `e` at every point. This is the data-parallel inner loop; the
// serial path is the reference the parallel one is tested against.
struct PointResidual {
  double residual = 0.0;
  double scale = 1.0;
};

std::vector<PointResidual> evaluate_residuals(const Expr& e,
                                              const std::vector<std::vector<double>>& points,
                                              ExecPolicy exec);

}  // namespace jacobikit

#endif

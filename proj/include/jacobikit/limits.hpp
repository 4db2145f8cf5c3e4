#ifndef JACOBIKIT_LIMITS_HPP
#define JACOBIKIT_LIMITS_HPP

#include "jacobikit/structure.hpp"

namespace jacobikit {

// Cylindrical function on the direct limit of the standard structures:
// a finite truncation level N and an expression over the chart of
// dimension 2N+1 through which the function factors.
struct CylindricalFunction {
  int level = 0;
  Expr fn;
};

ChartPtr standard_level_chart(int level);

CylindricalFunction make_cylindrical(int level, const Expr& fn);
CylindricalFunction parse_cylindrical(int level, std::string_view text);

// Reinterpret over the larger chart. The inclusion keeps index 0 and
// the position block fixed and shifts the momentum block:
// x0 -> x0, x^i -> x^i (1 <= i <= N), x^{N+i} -> x^{N'+i}.
CylindricalFunction cyl_promote(const CylindricalFunction& f, int new_level);

// Bracket at the common truncation level.
CylindricalFunction cyl_bracket(const CylindricalFunction& f, const CylindricalFunction& g,
                                const ZeroPolicy& policy = {});

// Point inclusion R^{2m+1} -> R^{2m2+1} (new coordinates set to zero),
// as target-coordinate expressions over the source chart.
std::vector<Expr> inclusion_map(int m, int m2);

// The standard level-m structure carried on the level-m2 chart: the
// flat set is the image of the inclusion, so the function algebra is
// cylindrical over level m. This is the structure the inclusion is a
// Jacobi map into.
PartialJacobiStructure cylinder_extension(int m, int m2);

}  // namespace jacobikit

#endif

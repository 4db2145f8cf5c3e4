#include "jacobikit/limits.hpp"

#include <algorithm>

#include "jacobikit/catalog.hpp"
#include "jacobikit/errors.hpp"

namespace jacobikit {

namespace {

// Index map of the inclusion at the function level: source coordinate
// index -> target coordinate index.
int promote_index(int i, int m, int m2) {
  if (i == 0) return 0;
  if (i <= m) return i;       // position block
  return i - m + m2;          // momentum block: m+k -> m2+k
}

}  // namespace

ChartPtr standard_level_chart(int level) {
  if (level < 0) throw Error("truncation level must be non-negative");
  std::vector<std::string> names;
  for (int i = 0; i < 2 * level + 1; ++i) names.push_back("x" + std::to_string(i));
  return make_chart(std::move(names));
}

CylindricalFunction make_cylindrical(int level, const Expr& fn) {
  if (level < 0) throw Error("truncation level must be non-negative");
  if (fn->chart->dim() != 2 * level + 1) {
    throw Error("cylindrical expression must live on the chart of its level");
  }
  return {level, fn};
}

CylindricalFunction parse_cylindrical(int level, std::string_view text) {
  return make_cylindrical(level, parse_expr(text, standard_level_chart(level)));
}

CylindricalFunction cyl_promote(const CylindricalFunction& f, int new_level) {
  if (new_level < f.level) throw Error("cannot demote a cylindrical function");
  if (new_level == f.level) return f;
  ChartPtr target = standard_level_chart(new_level);
  std::vector<Expr> images;
  images.reserve(static_cast<std::size_t>(2 * f.level + 1));
  for (int i = 0; i < 2 * f.level + 1; ++i) {
    images.push_back(make_coordinate(target, promote_index(i, f.level, new_level)));
  }
  return {new_level, substitute(f.fn, images)};
}

CylindricalFunction cyl_bracket(const CylindricalFunction& f, const CylindricalFunction& g,
                                const ZeroPolicy& policy) {
  const int level = std::max(f.level, g.level);
  const CylindricalFunction fp = cyl_promote(f, level);
  const CylindricalFunction gp = cyl_promote(g, level);
  const PartialJacobiStructure s = standard_jacobi_level(level);
  // Charts are structurally equal; rebind onto the structure's chart.
  std::vector<Expr> rebind;
  for (int i = 0; i < s.dim(); ++i) rebind.push_back(make_coordinate(s.chart, i));
  const Expr a = substitute(fp.fn, rebind);
  const Expr b = substitute(gp.fn, rebind);
  return {level, jacobi_bracket(s, a, b, policy)};
}

std::vector<Expr> inclusion_map(int m, int m2) {
  if (m2 < m) throw Error("inclusion requires a non-decreasing level");
  ChartPtr src = standard_level_chart(m);
  std::vector<Expr> images(static_cast<std::size_t>(2 * m2 + 1),
                           make_constant(src, Rational(0)));
  for (int i = 0; i < 2 * m + 1; ++i) {
    images[static_cast<std::size_t>(promote_index(i, m, m2))] = make_coordinate(src, i);
  }
  return images;
}

PartialJacobiStructure cylinder_extension(int m, int m2) {
  if (m2 < m) throw Error("extension requires a non-decreasing level");
  const PartialJacobiStructure big = standard_jacobi_level(m2);

  PartialJacobiStructure s;
  s.chart = big.chart;
  s.name = "standard-jacobi m=" + std::to_string(m) + " on level " + std::to_string(m2);
  for (int i = 0; i < 2 * m + 1; ++i) s.flat.push_back(promote_index(i, m, m2));
  std::sort(s.flat.begin(), s.flat.end());

  const Expr zero = make_constant(s.chart, Rational(0));
  s.lambda_sharp.assign(static_cast<std::size_t>(s.dim()),
                        std::vector<Expr>(s.flat.size(), zero));
  for (std::size_t b = 0; b < s.flat.size(); ++b) {
    const int j = s.flat[b];
    for (int i : s.flat) {
      s.lambda_sharp[static_cast<std::size_t>(i)][b] = big.lambda_entry(i, j);
    }
  }
  s.reeb.assign(static_cast<std::size_t>(s.dim()), zero);
  s.reeb[0] = make_constant(s.chart, Rational(1));
  s.regenerate_sources();
  return s;
}

}  // namespace jacobikit

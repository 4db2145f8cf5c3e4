#include "jacobikit/catalog.hpp"

#include <map>

#include "jacobikit/errors.hpp"

namespace jacobikit {

StructureConstants::StructureConstants(int n, std::vector<Rational> flattened)
    : n_(n), c_(std::move(flattened)) {
  if (n_ < 1 || c_.size() != static_cast<std::size_t>(n_) * n_ * n_) {
    throw StructureError("structure constants: expected n^3 entries");
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) {
        if (at(i, j, k) != -at(j, i, k)) {
          throw StructureError("structure constants not antisymmetric at (" + std::to_string(i) +
                               "," + std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) {
        for (int l = 0; l < n_; ++l) {
          Rational sum(0);
          for (int m = 0; m < n_; ++m) {
            sum += at(i, j, m) * at(m, k, l) + at(j, k, m) * at(m, i, l) + at(k, i, m) * at(m, j, l);
          }
          if (sum != 0) {
            throw StructureError("structure constants violate the Jacobi identity at (" +
                                 std::to_string(i) + "," + std::to_string(j) + "," +
                                 std::to_string(k) + "," + std::to_string(l) + ")");
          }
        }
      }
    }
  }
}

const Rational& StructureConstants::at(int i, int j, int k) const {
  return c_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
}

StructureConstants StructureConstants::so3() {
  const int n = 3;
  std::vector<Rational> c(n * n * n, Rational(0));
  auto set = [&](int i, int j, int k, int v) {
    c[(static_cast<std::size_t>(i) * n + j) * n + k] = v;
    c[(static_cast<std::size_t>(j) * n + i) * n + k] = -v;
  };
  set(0, 1, 2, 1);
  set(1, 2, 0, 1);
  set(2, 0, 1, 1);
  return StructureConstants(n, std::move(c));
}

// ---------------------------------------------------------------------------

namespace {

// Assemble a structure with S = all coordinates from the upper
// bivector coefficients Lambda^{ij} (i < j) and the Reeb components.
PartialJacobiStructure from_full_bivector(ChartPtr chart, std::string name,
                                          const std::map<std::pair<int, int>, Expr>& upper,
                                          std::vector<Expr> reeb) {
  const int n = chart->dim();
  PartialJacobiStructure s;
  s.chart = chart;
  s.name = std::move(name);
  for (int i = 0; i < n; ++i) s.flat.push_back(i);
  const Expr zero = make_constant(chart, Rational(0));
  s.lambda_sharp.assign(static_cast<std::size_t>(n),
                        std::vector<Expr>(static_cast<std::size_t>(n), zero));
  for (const auto& [ij, e] : upper) {
    const auto [i, j] = ij;
    s.lambda_sharp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
    s.lambda_sharp[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = negate(e);
  }
  s.reeb = std::move(reeb);
  s.regenerate_sources();
  return s;
}

std::vector<Expr> zero_vector(const ChartPtr& chart) {
  return std::vector<Expr>(static_cast<std::size_t>(chart->dim()),
                           make_constant(chart, Rational(0)));
}

}  // namespace

PartialJacobiStructure standard_jacobi_level(int m) {
  if (m < 0) throw Error("truncation level must be non-negative");
  const int n = 2 * m + 1;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  ChartPtr chart = make_chart(std::move(names));

  std::map<std::pair<int, int>, Expr> upper;
  for (int i = 1; i <= m; ++i) {
    upper[{0, m + i}] = make_coordinate(chart, m + i);
    upper[{i, m + i}] = make_constant(chart, Rational(-1));
  }
  std::vector<Expr> reeb = zero_vector(chart);
  reeb[0] = make_constant(chart, Rational(1));
  return from_full_bivector(chart, "standard-jacobi m=" + std::to_string(m), upper,
                            std::move(reeb));
}

PartialJacobiStructure standard_jacobi(int m) {
  if (m < 1) throw Error("standard structure requires m >= 1");
  return standard_jacobi_level(m);
}

PartialJacobiStructure contact_canonical(int m) {
  if (m < 1) throw Error("contact structure requires m >= 1");
  const int n = 2 * m + 1;
  std::vector<std::string> names;
  names.push_back("t");
  for (int i = 1; i <= m; ++i) names.push_back("q" + std::to_string(i));
  for (int i = 1; i <= m; ++i) names.push_back("p" + std::to_string(i));
  ChartPtr chart = make_chart(std::move(names));

  std::map<std::pair<int, int>, Expr> upper;
  for (int i = 1; i <= m; ++i) {
    upper[{0, m + i}] = make_coordinate(chart, m + i);  // Lambda(dt, dp_i) = p_i
    upper[{i, m + i}] = make_constant(chart, Rational(1));
  }
  std::vector<Expr> reeb = zero_vector(chart);
  reeb[0] = make_constant(chart, Rational(1));
  (void)n;
  return from_full_bivector(chart, "contact m=" + std::to_string(m), upper, std::move(reeb));
}

PartialJacobiStructure one_jet(int n) {
  if (n < 1) throw Error("one-jet structure requires n >= 1");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  names.push_back("u");
  for (int i = 1; i <= n; ++i) names.push_back("u" + std::to_string(i));
  ChartPtr chart = make_chart(std::move(names));

  // Lambda = sum_i (d/dx^i + u_i d/du) ^ d/du_i.
  std::map<std::pair<int, int>, Expr> upper;
  for (int i = 1; i <= n; ++i) {
    upper[{i - 1, n + i}] = make_constant(chart, Rational(1));
    upper[{n, n + i}] = make_coordinate(chart, n + i);
  }
  std::vector<Expr> reeb = zero_vector(chart);
  reeb[static_cast<std::size_t>(n)] = make_constant(chart, Rational(1));
  return from_full_bivector(chart, "one-jet n=" + std::to_string(n), upper, std::move(reeb));
}

PartialJacobiStructure lie_poisson(const StructureConstants& sc) {
  const int n = sc.dim();
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  ChartPtr chart = make_chart(std::move(names));

  std::map<std::pair<int, int>, Expr> upper;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<Expr> terms;
      for (int k = 0; k < n; ++k) {
        const Rational& c = sc.at(i, j, k);
        if (c == 0) continue;
        terms.push_back(scale(c, make_coordinate(chart, k)));
      }
      if (!terms.empty()) upper[{i, j}] = make_sum(std::move(terms));
    }
  }
  return from_full_bivector(chart, "lie-poisson n=" + std::to_string(n), upper,
                            zero_vector(chart));
}

// ---------------------------------------------------------------------------

namespace {

// Exact inverse of a small rational matrix by Gauss-Jordan elimination.
std::vector<std::vector<Rational>> invert_rational(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw StructureError("flat map is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

CosymplecticStructure cosymplectic_extended_cotangent(int m) {
  if (m < 1) throw Error("cosymplectic structure requires m >= 1");
  const int n = 2 * m + 1;
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i) names.push_back("q" + std::to_string(i));
  for (int i = 1; i <= m; ++i) names.push_back("p" + std::to_string(i));
  names.push_back("t");
  ChartPtr chart = make_chart(std::move(names));
  const int t = n - 1;

  // Omega = sum dq^i ^ dp_i as an antisymmetric matrix, eta = dt.
  auto omega = [&](int a, int b) -> Rational {
    for (int i = 0; i < m; ++i) {
      if (a == i && b == m + i) return Rational(1);
      if (a == m + i && b == i) return Rational(-1);
    }
    return Rational(0);
  };

  // flat(V) = i_V Omega + (i_V eta) eta; constant, so assembled and
  // inverted once. Column c holds the components of flat(e_c).
  std::vector<std::vector<Rational>> flat_map(static_cast<std::size_t>(n),
                                              std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      // (i_{e_c} Omega)_r = Omega(c, r)
      Rational v = omega(c, r);
      if (c == t && r == t) v += 1;  // (i_V eta) eta
      flat_map[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
    }
  }
  const auto inv = invert_rational(flat_map);

  // E = flat^{-1}(eta).
  std::vector<Rational> reeb_candidate(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) reeb_candidate[static_cast<std::size_t>(r)] = inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)];

  // P(dx^a, dx^b) = Omega(flat^{-1} dx^a, flat^{-1} dx^b).
  std::map<std::pair<int, int>, Expr> upper;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      Rational v(0);
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          const Rational o = omega(r, s);
          if (o == 0) continue;
          v += inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(a)] *
               inv[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)] * o;
        }
      }
      if (v != 0) upper[{a, b}] = make_constant(chart, v);
    }
  }

  CosymplecticStructure out{
      from_full_bivector(chart, "cosymplectic m=" + std::to_string(m), upper, zero_vector(chart)),
      {}};
  for (int r = 0; r < n; ++r) {
    out.distinguished_field.push_back(
        make_constant(chart, reeb_candidate[static_cast<std::size_t>(r)]));
  }
  return out;
}

}  // namespace jacobikit

#include "jacobikit/multivector.hpp"

#include <algorithm>
#include <exception>

#include "jacobikit/errors.hpp"
#include "jacobikit/polyform.hpp"

namespace jacobikit {

namespace {

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (!same_chart(a, b)) throw ChartMismatchError("multivector operands live on different charts");
}

// Sort indices ascending and return the permutation parity, or 0 if
// any index repeats.
int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i - 1] == idx[i]) return 0;
  }
  return sign;
}

// All strictly increasing r-tuples over {0..n-1}.
std::vector<std::vector<int>> increasing_tuples(int n, int r) {
  std::vector<std::vector<int>> out;
  if (r < 0 || r > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) cur[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(cur);
    int i = r - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) {
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

// Parity of the shuffle that lists `first` (ascending positions) then
// the complementary positions: inversions between the two blocks.
int shuffle_sign(const std::vector<int>& first_positions, int total) {
  int inv = 0;
  for (std::size_t i = 0; i < first_positions.size(); ++i) {
    // positions smaller than first_positions[i] that are NOT in the first block
    inv += first_positions[i] - static_cast<int>(i);
  }
  (void)total;
  return (inv % 2 == 0) ? 1 : -1;
}

Expr zero_expr(const ChartPtr& chart) { return make_constant(chart, Rational(0)); }

}  // namespace

MultivectorField::MultivectorField(ChartPtr chart, int degree)
    : chart_(std::move(chart)), degree_(degree) {
  if (!chart_) throw Error("multivector requires a chart");
  if (degree_ < 0) throw Error("multivector degree must be non-negative");
}

MultivectorField MultivectorField::scalar(ChartPtr chart, Expr f) {
  MultivectorField out(std::move(chart), 0);
  if (!is_zero_constant(f)) out.coeffs_.emplace(IndexTuple{}, std::move(f));
  return out;
}

MultivectorField MultivectorField::vector_field(ChartPtr chart, std::vector<Expr> components) {
  MultivectorField out(chart, 1);
  if (static_cast<int>(components.size()) != chart->dim()) {
    throw Error("vector field needs one component per coordinate");
  }
  for (int i = 0; i < chart->dim(); ++i) {
    auto& c = components[static_cast<std::size_t>(i)];
    if (!is_zero_constant(c)) out.coeffs_.emplace(IndexTuple{i}, std::move(c));
  }
  return out;
}

Expr MultivectorField::coefficient(std::span<const int> increasing) const {
  auto it = coeffs_.find(IndexTuple(increasing.begin(), increasing.end()));
  if (it == coeffs_.end()) return zero_expr(chart_);
  return it->second;
}

Expr MultivectorField::signed_coefficient(std::span<const int> indices) const {
  IndexTuple idx(indices.begin(), indices.end());
  const int sign = sort_with_sign(idx);
  if (sign == 0) return zero_expr(chart_);
  auto it = coeffs_.find(idx);
  if (it == coeffs_.end()) return zero_expr(chart_);
  return sign == 1 ? it->second : negate(it->second);
}

void MultivectorField::set_coefficient(IndexTuple increasing, Expr value) {
  if (static_cast<int>(increasing.size()) != degree_) {
    throw Error("index tuple size does not match degree");
  }
  for (std::size_t i = 0; i < increasing.size(); ++i) {
    if (increasing[i] < 0 || increasing[i] >= chart_->dim()) throw Error("index out of range");
    if (i > 0 && increasing[i - 1] >= increasing[i]) {
      throw Error("index tuple must be strictly increasing");
    }
  }
  if (!value || !same_chart(value->chart, chart_)) {
    throw ChartMismatchError("coefficient lives on a different chart");
  }
  if (is_zero_constant(value)) {
    coeffs_.erase(increasing);
  } else {
    coeffs_[std::move(increasing)] = std::move(value);
  }
}

void MultivectorField::add_term(IndexTuple indices, Expr value) {
  if (static_cast<int>(indices.size()) != degree_) {
    throw Error("index tuple size does not match degree");
  }
  const int sign = sort_with_sign(indices);
  if (sign == 0 || is_zero_constant(value)) return;
  Expr signed_value = sign == 1 ? std::move(value) : negate(std::move(value));
  auto it = coeffs_.find(indices);
  if (it == coeffs_.end()) {
    coeffs_.emplace(std::move(indices), std::move(signed_value));
  } else {
    Expr combined = add(it->second, std::move(signed_value));
    if (is_zero_constant(combined)) {
      coeffs_.erase(it);
    } else {
      it->second = std::move(combined);
    }
  }
}

Expr MultivectorField::scalar_value() const {
  if (degree_ != 0) throw Error("scalar_value on a field of positive degree");
  if (coeffs_.empty()) return zero_expr(chart_);
  return coeffs_.begin()->second;
}

std::vector<Expr> MultivectorField::components() const {
  if (degree_ != 1) throw Error("components on a field of degree != 1");
  std::vector<Expr> out(static_cast<std::size_t>(chart_->dim()), zero_expr(chart_));
  for (const auto& [idx, c] : coeffs_) out[static_cast<std::size_t>(idx[0])] = c;
  return out;
}

MultivectorField MultivectorField::pruned(int exp_coord) const {
  MultivectorField out(chart_, degree_);
  for (const auto& [idx, c] : coeffs_) {
    if (auto p = poly_normalize(c)) {
      if (p->is_zero()) continue;
      out.coeffs_.emplace(idx, p->to_expr(chart_));
      continue;
    }
    if (exp_coord >= 0) {
      if (auto p = exp_poly_normalize(c, exp_coord)) {
        if (p->is_zero()) continue;
        out.coeffs_.emplace(idx, p->to_expr(chart_));
        continue;
      }
    }
    out.coeffs_.emplace(idx, c);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// det of the k x k matrix of partials by cofactor expansion along the
// first row, skipping structurally zero entries.
Expr partials_det(const std::vector<std::vector<Expr>>& m, std::vector<int> cols,
                  std::size_t row, const ChartPtr& chart) {
  if (cols.empty()) return make_constant(chart, Rational(1));
  std::vector<Expr> terms;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Expr& entry = m[row][static_cast<std::size_t>(cols[j])];
    if (is_zero_constant(entry)) continue;
    std::vector<int> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (t != j) rest.push_back(cols[t]);
    }
    Expr minor = partials_det(m, std::move(rest), row + 1, chart);
    Expr term = mul(entry, std::move(minor));
    terms.push_back(j % 2 == 0 ? std::move(term) : negate(std::move(term)));
  }
  if (terms.empty()) return zero_expr(chart);
  return make_sum(std::move(terms));
}

}  // namespace

Expr mv_apply(const MultivectorField& P, std::span<const Expr> fs) {
  const ChartPtr& chart = P.chart();
  if (static_cast<int>(fs.size()) != P.degree()) {
    throw Error("argument count does not match multivector degree");
  }
  for (const auto& f : fs) require_same_chart(chart, f->chart);
  if (P.degree() == 0) return P.scalar_value();

  const int k = P.degree();
  // partials[a][j] = d f_a / d x^j
  std::vector<std::vector<Expr>> partials(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) {
    partials[static_cast<std::size_t>(a)].reserve(static_cast<std::size_t>(chart->dim()));
    for (int j = 0; j < chart->dim(); ++j) {
      partials[static_cast<std::size_t>(a)].push_back(differentiate(fs[static_cast<std::size_t>(a)], j));
    }
  }
  std::vector<Expr> terms;
  for (const auto& [idx, c] : P.coefficients()) {
    Expr det = partials_det(partials, idx, 0, chart);
    if (is_zero_constant(det)) continue;
    terms.push_back(mul(c, std::move(det)));
  }
  if (terms.empty()) return zero_expr(chart);
  return make_sum(std::move(terms));
}

MultivectorField wedge(const MultivectorField& P, const MultivectorField& Q) {
  require_same_chart(P.chart(), Q.chart());
  const ChartPtr& chart = P.chart();
  MultivectorField out(chart, P.degree() + Q.degree());
  for (const auto& [ip, cp] : P.coefficients()) {
    for (const auto& [iq, cq] : Q.coefficients()) {
      // skip overlapping tuples
      bool overlap = false;
      for (int a : ip) {
        if (std::binary_search(iq.begin(), iq.end(), a)) {
          overlap = true;
          break;
        }
      }
      if (overlap) continue;
      MultivectorField::IndexTuple merged;
      merged.reserve(ip.size() + iq.size());
      merged.insert(merged.end(), ip.begin(), ip.end());
      merged.insert(merged.end(), iq.begin(), iq.end());
      out.add_term(std::move(merged), mul(cp, cq));
    }
  }
  return out.pruned();
}

MultivectorField contract_df(const MultivectorField& P, const Expr& f) {
  require_same_chart(P.chart(), f->chart);
  const ChartPtr& chart = P.chart();
  if (P.degree() == 0) return MultivectorField::scalar(chart, zero_expr(chart));
  MultivectorField out(chart, P.degree() - 1);
  for (const auto& [idx, c] : P.coefficients()) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      Expr df = differentiate(f, idx[a]);
      if (is_zero_constant(df)) continue;
      MultivectorField::IndexTuple rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t b = 0; b < idx.size(); ++b) {
        if (b != a) rest.push_back(idx[b]);
      }
      Expr term = mul(std::move(df), c);
      out.add_term(std::move(rest), a % 2 == 0 ? std::move(term) : negate(std::move(term)));
    }
  }
  return out.pruned();
}

namespace {

// D_A(g, x^{c_1}, ..., x^{c_{a-1}}) for strictly increasing coordinate
// slots: every tuple of A containing all the c's contributes its free
// index j against dg/dx^j with the cofactor sign of j's position.
Expr derivation_on_function_and_coords(const MultivectorField& A, const Expr& g,
                                       std::span<const int> coords) {
  const ChartPtr& chart = A.chart();
  std::vector<Expr> terms;
  for (const auto& [idx, c] : A.coefficients()) {
    if (idx.size() != coords.size() + 1) break;  // all tuples have equal size
    // locate the single index of `idx` not present in `coords`
    int free_index = -1;
    std::size_t free_pos = 0;
    std::size_t ci = 0;
    bool match = true;
    for (std::size_t t = 0; t < idx.size(); ++t) {
      if (ci < coords.size() && idx[t] == coords[ci]) {
        ++ci;
      } else if (free_index < 0) {
        free_index = idx[t];
        free_pos = t;
      } else {
        match = false;
        break;
      }
    }
    if (!match || ci != coords.size() || free_index < 0) continue;
    Expr dg = differentiate(g, free_index);
    if (is_zero_constant(dg)) continue;
    Expr term = mul(c, std::move(dg));
    terms.push_back(free_pos % 2 == 0 ? std::move(term) : negate(std::move(term)));
  }
  if (terms.empty()) return zero_expr(chart);
  return make_sum(std::move(terms));
}

// (D_A o D_B)(x^{i_1}, ..., x^{i_r}) via the shuffle sum: the first
// block of size deg(B) feeds D_B, whose value feeds the first slot of
// D_A alongside the remaining coordinates.
Expr derivation_compose_on_coords(const MultivectorField& A, const MultivectorField& B,
                                  const std::vector<int>& tuple) {
  const ChartPtr& chart = A.chart();
  const int b = B.degree();
  const int r = static_cast<int>(tuple.size());
  std::vector<Expr> terms;
  for (const auto& first_positions : increasing_tuples(r, b)) {
    std::vector<int> inner;
    inner.reserve(static_cast<std::size_t>(b));
    std::vector<int> outer;
    outer.reserve(tuple.size() - static_cast<std::size_t>(b));
    std::size_t fi = 0;
    for (int pos = 0; pos < r; ++pos) {
      if (fi < first_positions.size() && first_positions[fi] == pos) {
        inner.push_back(tuple[static_cast<std::size_t>(pos)]);
        ++fi;
      } else {
        outer.push_back(tuple[static_cast<std::size_t>(pos)]);
      }
    }
    Expr g = B.signed_coefficient(inner);
    if (is_zero_constant(g)) continue;
    Expr value = derivation_on_function_and_coords(A, g, outer);
    if (is_zero_constant(value)) continue;
    const int sign = shuffle_sign(first_positions, r);
    terms.push_back(sign == 1 ? std::move(value) : negate(std::move(value)));
  }
  if (terms.empty()) return zero_expr(chart);
  return make_sum(std::move(terms));
}

}  // namespace

MultivectorField schouten(const MultivectorField& P, const MultivectorField& Q, ExecPolicy exec) {
  require_same_chart(P.chart(), Q.chart());
  const ChartPtr& chart = P.chart();
  const int k = P.degree();
  const int l = Q.degree();

  // Degree-0 operands: [P,f] = i_df P, [f,P] = (-1)^deg(P) [P,f], [f,g] = 0.
  if (k == 0 && l == 0) return MultivectorField::scalar(chart, zero_expr(chart));
  if (l == 0) return contract_df(P, Q.scalar_value());
  if (k == 0) {
    MultivectorField c = contract_df(Q, P.scalar_value());
    return l % 2 == 0 ? c : mv_scale(Rational(-1), c);
  }

  const int r = k + l - 1;
  MultivectorField out(chart, r);
  if (r > chart->dim()) return out;

  const int graded_sign = ((k - 1) * (l - 1)) % 2 == 0 ? 1 : -1;
  const auto tuples = increasing_tuples(chart->dim(), r);
  std::vector<Expr> results(tuples.size());
  std::vector<std::exception_ptr> errors(tuples.size());
  detail::run_indexed(tuples.size(), exec, [&](std::size_t i) {
    try {
      Expr pq = derivation_compose_on_coords(P, Q, tuples[i]);
      Expr qp = derivation_compose_on_coords(Q, P, tuples[i]);
      results[i] = graded_sign == 1 ? sub(std::move(pq), std::move(qp))
                                    : add(std::move(pq), std::move(qp));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (!is_zero_constant(results[i])) out.set_coefficient(tuples[i], results[i]);
  }
  return out.pruned();
}

MultivectorField lie_derivative(const MultivectorField& X, const MultivectorField& P,
                                ExecPolicy exec) {
  if (X.degree() != 1) throw Error("Lie derivative requires a vector field");
  return schouten(X, P, exec);
}

// ---------------------------------------------------------------------------

MultivectorField mv_add(const MultivectorField& A, const MultivectorField& B) {
  require_same_chart(A.chart(), B.chart());
  if (A.degree() != B.degree()) throw Error("degree mismatch in multivector sum");
  MultivectorField out = A;
  for (const auto& [idx, c] : B.coefficients()) out.add_term(idx, c);
  return out.pruned();
}

MultivectorField mv_sub(const MultivectorField& A, const MultivectorField& B) {
  return mv_add(A, mv_scale(Rational(-1), B));
}

MultivectorField mv_scale(const Rational& c, const MultivectorField& A) {
  MultivectorField out(A.chart(), A.degree());
  if (c == 0) return out;
  for (const auto& [idx, v] : A.coefficients()) out.set_coefficient(idx, scale(c, v));
  return out;
}

MultivectorField mv_scale_expr(const Expr& f, const MultivectorField& A) {
  require_same_chart(A.chart(), f->chart);
  MultivectorField out(A.chart(), A.degree());
  if (is_zero_constant(f)) return out;
  for (const auto& [idx, v] : A.coefficients()) out.set_coefficient(idx, mul(f, v));
  return out.pruned();
}

FieldZeroOutcome field_is_zero(const MultivectorField& A, const ZeroPolicy& policy,
                               int exp_coord) {
  FieldZeroOutcome out;
  for (const auto& [idx, c] : A.coefficients()) {
    const auto z = check_zero_auto_exp(c, exp_coord, policy);
    if (z.backend == Backend::Sampled) {
      out.backend = Backend::Sampled;
    } else if (z.backend == Backend::ExactExp && out.backend == Backend::Exact) {
      out.backend = Backend::ExactExp;
    }
    if (!z.zero) {
      out.zero = false;
      out.index = idx;
      out.witness = z.witness;
      return out;
    }
  }
  return out;
}

}  // namespace jacobikit

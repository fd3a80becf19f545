#include "dzv/siegel.hpp"

#include <algorithm>
#include <stdexcept>

#include "dzv/errors.hpp"
#include "dzv/fmodule.hpp"
#include "dzv/ratfunc.hpp"

namespace dzv {

namespace {

using Matrix = std::vector<std::vector<Poly>>;

struct Pivot {
  std::size_t row;
  std::size_t col;
};

std::size_t row_weight(const std::vector<Poly>& r, std::size_t lo, std::size_t hi) {
  std::size_t w = 0;
  for (std::size_t j = lo; j < hi; ++j) w += !r[j].is_zero();
  return w;
}

void remove_content(std::vector<Poly>& r, std::size_t lo, std::size_t hi) {
  Poly g;
  for (std::size_t j = lo; j < hi; ++j) {
    if (r[j].is_zero()) continue;
    g = g.field() == nullptr ? r[j].monic() : Poly::gcd(g, r[j]);
    if (g.is_constant()) return;
  }
  if (g.field() == nullptr) return;
  for (std::size_t j = lo; j < hi; ++j) {
    if (!r[j].is_zero()) r[j] = r[j].exact_div(g);
  }
}

// Clears column `col` of `target` using `piv` (whose entry there is nonzero).
// Fraction-free: target <- (p/g) target − (e/g) piv with g = gcd(p, e).
void reduce_row(const FiniteField& f, std::vector<Poly>& target, const std::vector<Poly>& piv, std::size_t col,
                std::size_t lo, std::size_t hi) {
  const Poly e = target[col];
  if (e.is_zero()) return;
  const Poly& p = piv[col];
  if (p.is_constant()) {
    const Poly factor = e.scaled(f.inv(p.coeff(0)));
    for (std::size_t j = lo; j < hi; ++j) {
      if (!piv[j].is_zero()) target[j] -= factor * piv[j];
    }
    target[col] = Poly(f, Var::t);
    return;
  }
  const Poly g = Poly::gcd(p, e);
  const Poly u = p.exact_div(g);
  const Poly v = e.exact_div(g);
  for (std::size_t j = lo; j < hi; ++j) {
    if (!target[j].is_zero()) target[j] = u * target[j];
    if (!piv[j].is_zero()) target[j] -= v * piv[j];
  }
  target[col] = Poly(f, Var::t);
  if (!u.is_constant()) remove_content(target, lo, hi);
}

// Echelon pass over columns [lo, hi) on the rows not yet used. With
// `leftmost`, pivot columns are taken in order (lowest-degree row within the
// column); otherwise the globally cheapest entry is chosen.
std::vector<Pivot> eliminate(const FiniteField& f, Matrix& m, std::vector<char>& used, std::size_t lo,
                             std::size_t hi, std::size_t width, bool leftmost) {
  std::vector<Pivot> pivots;
  std::vector<char> done(hi, 0);
  for (;;) {
    std::size_t best_row = m.size();
    std::size_t best_col = hi;
    std::int64_t best_deg = 0;
    std::size_t best_w = 0;
    for (std::size_t c = lo; c < hi; ++c) {
      if (done[c]) continue;
      for (std::size_t r = 0; r < m.size(); ++r) {
        if (used[r] || m[r][c].is_zero()) continue;
        const std::int64_t d = m[r][c].degree().value();
        if (best_row != m.size() && d > best_deg) continue;
        const std::size_t w = row_weight(m[r], lo, width);
        if (best_row == m.size() || d < best_deg || w < best_w) {
          best_row = r;
          best_col = c;
          best_deg = d;
          best_w = w;
        }
      }
      if (leftmost && best_row != m.size()) break;
    }
    if (best_row == m.size()) break;
    used[best_row] = 1;
    done[best_col] = 1;
    pivots.push_back({best_row, best_col});
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (!used[r]) reduce_row(f, m[r], m[best_row], best_col, lo, width);
    }
  }
  return pivots;
}

// Primitive polynomial multiple of a rational vector, free entry monic.
std::vector<Poly> clear_denominators(const FiniteField& f, const std::vector<RatFunc>& x, std::size_t free_col) {
  Poly l = Poly::constant(f, f.one(), Var::t);
  for (const auto& v : x) {
    if (!v.is_zero()) l = l.exact_div(Poly::gcd(l, v.den())) * v.den();
  }
  std::vector<Poly> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v.is_zero() ? Poly(f, Var::t) : v.num() * l.exact_div(v.den()));
  remove_content(out, 0, out.size());
  const Fq lead = out[free_col].lead();
  if (lead.value != 1) {
    const Fq s = f.inv(lead);
    for (auto& v : out) v = v.scaled(s);
  }
  return out;
}

std::vector<std::vector<Poly>> kernel_from_echelon(const FiniteField& f, const Matrix& m,
                                                   const std::vector<Pivot>& pivots, std::size_t lo,
                                                   std::size_t hi) {
  std::vector<char> is_pivot(hi, 0);
  for (const auto& p : pivots) is_pivot[p.col] = 1;
  std::vector<std::vector<Poly>> basis;
  for (std::size_t free = lo; free < hi; ++free) {
    if (is_pivot[free]) continue;
    std::vector<RatFunc> x(hi - lo, RatFunc::zero(f, Var::t));
    x[free - lo] = RatFunc::one(f, Var::t);
    for (std::size_t k = pivots.size(); k-- > 0;) {
      const auto& row = m[pivots[k].row];
      RatFunc s = RatFunc::zero(f, Var::t);
      for (std::size_t j = lo; j < hi; ++j) {
        if (j == pivots[k].col || row[j].is_zero() || x[j - lo].is_zero()) continue;
        s += RatFunc(row[j]) * x[j - lo];
      }
      x[pivots[k].col - lo] = -s / RatFunc(row[pivots[k].col]);
    }
    basis.push_back(clear_denominators(f, x, free - lo));
  }
  return basis;
}

Matrix padded(const FiniteField& f, Matrix rows, std::size_t cols) {
  for (auto& r : rows) r.resize(cols, Poly(f, Var::t));
  for (auto& r : rows) {
    for (auto& e : r) {
      if (e.field() == nullptr) e = Poly(f, Var::t);
    }
  }
  return rows;
}

}  // namespace

std::size_t siegel_bound(std::uint32_t q, unsigned n, Degree max_deg_f) {
  const std::size_t from_n = static_cast<std::size_t>(n) * q / (q - 1) + 1;
  if (max_deg_f.is_neg_inf()) return from_n;
  return std::max(static_cast<std::size_t>(max_deg_f.value()) + 1, from_n);
}

SiegelSystem build_system(const CarlitzContext& ctx, const std::vector<TensorPoint>& points, unsigned n) {
  const FiniteField& f = ctx.field();
  const std::uint32_t q = ctx.q();
  SiegelSystem sys;
  sys.n = n;
  sys.points = points;
  Degree max_f = Degree::neg_inf();
  for (const auto& v : points) {
    if (v.size() != n) throw std::invalid_argument("point dimension does not match the tensor power");
    sys.f.push_back(assoc_poly(f, v));
    max_f = std::max(max_f, sys.f.back().deg_theta());
  }
  sys.ell = siegel_bound(q, n, max_f);
  const std::size_t ell = sys.ell;
  const std::size_t nq = static_cast<std::size_t>(n) * q;
  std::size_t top = std::max(ell - 1 + nq, (ell - 1) * q);
  if (!max_f.is_neg_inf()) top = std::max(top, static_cast<std::size_t>(max_f.value()) + nq);
  const std::size_t cols = ell + points.size();
  sys.rows.assign(top + 1, std::vector<Poly>(cols, Poly(f, Var::t)));

  // (t − θ^q)^n = Σ_k (−1)^k C(n,k) t^{n−k} θ^{qk}
  std::vector<Poly> b(n + 1);
  for (unsigned k = 0; k <= n; ++k) {
    Fq c = f.from_int(static_cast<std::int64_t>(binomial_mod(n, k, f.p())));
    if (k % 2 == 1) c = f.neg(c);
    b[k] = Poly::monomial(f, c, n - k, Var::t);
  }
  for (std::size_t j = 0; j < ell; ++j) {
    for (unsigned k = 0; k <= n; ++k) {
      if (!b[k].is_zero()) sys.rows[j + q * k][j] += b[k];
    }
    sys.rows[j * q][j] -= Poly::constant(f, f.one(), Var::t);
  }
  const BiPoly shift = (BiPoly::from_t(Poly::x(f, Var::t)) -
                        BiPoly::from_theta(Poly::monomial(f, f.one(), q, Var::theta)))
                           .pow(n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const BiPoly prod = sys.f[i] * shift;
    const Degree d = prod.deg_theta();
    for (std::int64_t r = 0; r <= d.value_or(-1); ++r) {
      sys.rows[static_cast<std::size_t>(r)][ell + i] = prod.theta_coeff(static_cast<std::size_t>(r));
    }
  }
  return sys;
}

TensorPoint apply_relation(const CarlitzContext& ctx, const std::vector<TensorPoint>& points,
                           const std::vector<Poly>& a, unsigned n) {
  TensorPoint acc(n, Poly(ctx.field(), Var::theta));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (a[i].is_zero()) continue;
    const TensorPoint img = ctx.carlitz_action(a[i], points[i]);
    for (unsigned j = 0; j < n; ++j) acc[j] += img[j];
  }
  return acc;
}

RelationResult relation_rank(const CarlitzContext& ctx, const std::vector<TensorPoint>& points, unsigned n) {
  const FiniteField& f = ctx.field();
  RelationResult out;
  if (points.empty()) return out;
  SiegelSystem sys = build_system(ctx, points, n);
  const std::size_t ell = sys.ell;
  const std::size_t m = points.size();
  const std::size_t width = ell + m;
  out.ell = ell;
  out.rows = sys.num_rows();

  Matrix& mat = sys.rows;
  std::vector<char> used(mat.size(), 0);
  const std::vector<Pivot> cpiv = eliminate(f, mat, used, 0, ell, width, false);
  out.homogeneous_nullity = ell - cpiv.size();

  Matrix residual;
  for (std::size_t r = 0; r < mat.size(); ++r) {
    if (used[r]) continue;
    std::vector<Poly> row(mat[r].begin() + static_cast<std::ptrdiff_t>(ell), mat[r].end());
    if (row_weight(row, 0, m) > 0) residual.push_back(std::move(row));
  }
  std::vector<char> rused(residual.size(), 0);
  const std::vector<Pivot> apiv = eliminate(f, residual, rused, 0, m, m, true);
  out.rank = apiv.size();
  const auto kernel = kernel_from_echelon(f, residual, apiv, 0, m);
  std::vector<std::size_t> free_cols;
  {
    std::vector<char> is_pivot(m, 0);
    for (const auto& p : apiv) is_pivot[p.col] = 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (!is_pivot[j]) free_cols.push_back(j);
    }
  }

  const BiPoly shift = (BiPoly::from_t(Poly::x(f, Var::t)) -
                        BiPoly::from_theta(Poly::monomial(f, f.one(), ctx.q(), Var::theta)))
                           .pow(n);
  for (std::size_t idx = 0; idx < kernel.size(); ++idx) {
    // Back substitution through the c-pivots, rescaling the whole vector
    // whenever a division is not exact; free c's are set to zero.
    std::vector<Poly> a = kernel[idx];
    std::vector<Poly> c(ell, Poly(f, Var::t));
    for (std::size_t k = cpiv.size(); k-- > 0;) {
      const auto& row = mat[cpiv[k].row];
      Poly s(f, Var::t);
      for (std::size_t j = 0; j < ell; ++j) {
        if (j != cpiv[k].col && !row[j].is_zero() && !c[j].is_zero()) s += row[j] * c[j];
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (!row[ell + i].is_zero() && !a[i].is_zero()) s += row[ell + i] * a[i];
      }
      const Poly& p = row[cpiv[k].col];
      const Poly g = s.is_zero() ? p.monic() : Poly::gcd(p, s);
      const Poly scale = p.exact_div(g);
      if (!scale.is_constant()) {
        for (auto& x : a) x *= scale;
        for (auto& x : c) x *= scale;
      } else {
        s = s.scaled(f.inv(scale.coeff(0)));
      }
      c[cpiv[k].col] = -s.exact_div(g);
    }
    std::vector<Poly> full = c;
    full.insert(full.end(), a.begin(), a.end());
    remove_content(full, 0, full.size());
    const Fq lead = full[ell + free_cols[idx]].lead();
    if (lead.value != 1) {
      for (auto& x : full) x = x.scaled(f.inv(lead));
    }
    c.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(ell));
    a.assign(full.begin() + static_cast<std::ptrdiff_t>(ell), full.end());

    std::vector<Poly> dcoef;
    std::size_t dt = 0;
    for (const auto& cj : c) dt = std::max(dt, cj.size());
    for (std::size_t i = 0; i < dt; ++i) {
      std::vector<Fq> th(ell);
      for (std::size_t j = 0; j < ell; ++j) th[j] = c[j].coeff(i);
      dcoef.emplace_back(f, std::move(th), Var::theta);
    }
    Relation rel{a, BiPoly(f, std::move(dcoef))};

    if (!is_zero_point(apply_relation(ctx, points, a, n))) {
      throw MathError("solver relation does not annihilate the points");
    }
    BiPoly fsum(f);
    for (std::size_t i = 0; i < m; ++i) fsum += sys.f[i].mul_t(a[i]);
    if (!((rel.delta + fsum) * shift - rel.delta.twist(1)).is_zero()) {
      throw MathError("relation witness fails the difference equation");
    }
    out.relations.push_back(std::move(rel));
  }
  return out;
}

std::vector<std::vector<Poly>> polynomial_kernel(const FiniteField& f, std::vector<std::vector<Poly>> rows,
                                                 std::size_t cols) {
  Matrix m = padded(f, std::move(rows), cols);
  std::vector<char> used(m.size(), 0);
  const auto piv = eliminate(f, m, used, 0, cols, cols, true);
  return kernel_from_echelon(f, m, piv, 0, cols);
}

std::size_t polynomial_rank(const FiniteField& f, std::vector<std::vector<Poly>> rows, std::size_t cols) {
  Matrix m = padded(f, std::move(rows), cols);
  std::vector<char> used(m.size(), 0);
  return eliminate(f, m, used, 0, cols, cols, false).size();
}

}  // namespace dzv

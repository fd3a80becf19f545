#include "dzv/fmodule.hpp"

#include <stdexcept>

#include "dzv/errors.hpp"

namespace dzv {

namespace {

// g = Q (t−θ)^k + r with deg_t r < k. Returns {Q, r} in the t-power basis.
std::pair<BiPoly, BiPoly> split_falling(const FiniteField& f, const BiPoly& g, unsigned k) {
  auto c = g.to_falling();
  if (c.size() <= k) return {BiPoly(f), g};
  std::vector<Poly> hi(c.begin() + k, c.end());
  c.resize(k);
  return {BiPoly::from_falling(f, hi), BiPoly::from_falling(f, c)};
}

// Falling coefficients c_{k−1}, ..., c_0 of g (deg_t g < k), top first.
std::vector<Poly> read_block(const FiniteField& f, const BiPoly& g, unsigned k) {
  auto c = g.to_falling();
  if (c.size() > k) throw std::logic_error("block not reduced before reading coordinates");
  c.resize(k, Poly(f, Var::theta));
  return {c.rbegin(), c.rend()};
}

BiPoly reduce_m1(const FiniteField& f, BiPoly g, unsigned n) {
  while (g.deg_t() >= Degree(n)) {
    auto [quo, rem] = split_falling(f, g, n);
    g = rem + quo.twist(1);
  }
  return g;
}

}  // namespace

TensorPoint NormalForm::first_block() const {
  return TensorPoint(coords.begin(), coords.begin() + shape.n());
}

bool NormalForm::in_tensor_power() const {
  for (std::size_t i = shape.n(); i < coords.size(); ++i) {
    if (!coords[i].is_zero()) return false;
  }
  return true;
}

BiPoly assoc_poly(const FiniteField& f, const TensorPoint& z) {
  // z_1 is the coefficient of (t−θ)^{n−1}.
  std::vector<Poly> c(z.rbegin(), z.rend());
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  return BiPoly::from_falling(f, c);
}

TensorPoint normalize_tensor(const FiniteField& f, const BiPoly& g, unsigned n) {
  if (n == 0) throw std::invalid_argument("tensor power must be positive");
  return read_block(f, reduce_m1(f, g, n), n);
}

NormalForm normalize(const CarlitzContext& ctx, const ModuleElement& x, const ModuleShape& shape) {
  const FiniteField& f = ctx.field();
  const unsigned n = shape.n();
  const unsigned s2 = shape.s2;
  BiPoly g1 = x.g1;
  BiPoly g2 = x.g2;
  if (g1.field() == nullptr) g1 = BiPoly(f);
  if (g2.field() == nullptr) g2 = BiPoly(f);
  const BiPoly& h = ctx.anderson_thakur(shape.s1 - 1);
  while (g2.deg_t() >= Degree(s2)) {
    auto [quo, rem] = split_falling(f, g2, s2);
    const BiPoly qt = quo.twist(1);
    g2 = rem + qt;
    g1 -= qt * h;
  }
  g1 = reduce_m1(f, std::move(g1), n);
  NormalForm out{shape, read_block(f, g1, n)};
  auto b2 = read_block(f, g2, s2);
  out.coords.insert(out.coords.end(), b2.begin(), b2.end());
  return out;
}

ModuleElement lift(const FiniteField& f, const NormalForm& v) {
  const unsigned n = v.shape.n();
  const TensorPoint a(v.coords.begin(), v.coords.begin() + n);
  const TensorPoint b(v.coords.begin() + n, v.coords.end());
  return {assoc_poly(f, a), assoc_poly(f, b)};
}

NormalForm act(const CarlitzContext& ctx, const Poly& a, const NormalForm& v) {
  const FiniteField& f = ctx.field();
  const ModuleElement x = lift(f, v);
  return normalize(ctx, {x.g1.mul_t(a), x.g2.mul_t(a)}, v.shape);
}

TensorPoint special_point_vn(const CarlitzContext& ctx, unsigned n) {
  if (n == 0) throw std::invalid_argument("weight must be positive");
  return normalize_tensor(ctx.field(), ctx.anderson_thakur(n - 1), n);
}

NormalForm special_point_vs(const CarlitzContext& ctx, unsigned s1, unsigned s2) {
  if (s1 == 0 || s2 == 0) throw std::invalid_argument("index entries must be positive");
  const BiPoly& h1 = ctx.anderson_thakur(s1 - 1);
  const BiPoly& h2 = ctx.anderson_thakur(s2 - 1);
  return normalize(ctx, {-(h1 * h2), h2}, ModuleShape{s1, s2});
}

XiPoint xi_point(const CarlitzContext& ctx, unsigned s1, unsigned s2) {
  if (s2 % (ctx.q() - 1) != 0) throw std::invalid_argument("Xi point needs (q-1) | s2");
  XiPoint out;
  out.s1 = s1;
  out.s2 = s2;
  out.alpha = ctx.alpha_for(s2);
  const NormalForm vs = special_point_vs(ctx, s1, s2);
  const NormalForm img = act(ctx, out.alpha, vs);
  if (!img.in_tensor_power()) {
    throw MathError("Xi point for (" + std::to_string(s1) + "," + std::to_string(s2) +
                    ") has a nonzero m_2 block");
  }
  out.xi = img.first_block();
  return out;
}

}  // namespace dzv

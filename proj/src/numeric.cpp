#include "dzv/numeric.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "dzv/errors.hpp"

namespace dzv {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Solves A x = rhs over F_q; nullopt if inconsistent. Free unknowns are 0.
std::optional<std::vector<Fq>> solve_fq(const FiniteField& f, std::vector<std::vector<Fq>> a, std::vector<Fq> rhs,
                                        std::size_t unknowns) {
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < unknowns && row < a.size(); ++c) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][c].is_zero()) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    std::swap(rhs[piv], rhs[row]);
    const Fq inv = f.inv(a[row][c]);
    for (auto& x : a[row]) x = f.mul(x, inv);
    rhs[row] = f.mul(rhs[row], inv);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c].is_zero()) continue;
      const Fq s = a[r][c];
      for (std::size_t j = 0; j < unknowns; ++j) a[r][j] = f.sub(a[r][j], f.mul(s, a[row][j]));
      rhs[r] = f.sub(rhs[r], f.mul(s, rhs[row]));
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < a.size(); ++r) {
    if (!rhs[r].is_zero()) return std::nullopt;
  }
  std::vector<Fq> x(unknowns);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = rhs[r];
  return x;
}

// Lowest valuation among the terms, from their computed values.
std::int64_t term_floor(const std::vector<LaurentSeries>& vals) {
  std::int64_t v = LaurentSeries::kExact;
  for (const auto& x : vals) v = std::min(v, x.valuation());
  return v;
}

}  // namespace

const char* to_string(VerifyStatus s) noexcept {
  switch (s) {
    case VerifyStatus::pass:
      return "pass";
    case VerifyStatus::fail:
      return "fail";
    case VerifyStatus::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::int64_t power_sum_valuation_bound(std::uint32_t q, std::uint32_t p, unsigned d, unsigned k) {
  std::int64_t b = static_cast<std::int64_t>(d) * k;
  for (unsigned r = 1; r <= d; ++r) {
    const unsigned e = (r - 1) / (p - 1);
    // p^e saturates well before it could matter against any precision.
    const std::uint64_t pe = e >= 40 ? (std::uint64_t{1} << 40) : std::min<std::uint64_t>(ipow(p, e), std::uint64_t{1} << 40);
    const std::uint64_t j = std::max<std::uint64_t>(q - 1, pe);
    b += static_cast<std::int64_t>((d - r + 1) * j);
  }
  return b;
}

std::optional<RatFunc> rational_reconstruct(const LaurentSeries& x, unsigned deg_n, unsigned deg_d, unsigned margin) {
  const FiniteField* fp = x.field();
  if (fp == nullptr) throw std::invalid_argument("reconstruction needs a series over a field");
  const FiniteField& f = *fp;
  const std::int64_t prec = x.precision();
  if (x.is_exact()) throw std::invalid_argument("reconstruction needs a truncated series");
  // y = x · D, D = Σ_{j ≤ deg_d} d_j θ^j. Required: y_e = 0 for e < −deg_n and
  // for 1 ≤ e < prec − deg_d.
  const std::int64_t lo = std::min(x.valuation(), static_cast<std::int64_t>(-static_cast<std::int64_t>(deg_n))) -
                          static_cast<std::int64_t>(deg_d);
  const std::int64_t top = prec - static_cast<std::int64_t>(deg_d);
  std::vector<std::int64_t> eqs;
  for (std::int64_t e = lo; e < -static_cast<std::int64_t>(deg_n); ++e) eqs.push_back(e);
  for (std::int64_t e = 1; e < top; ++e) eqs.push_back(e);
  auto coeff = [&](std::int64_t e) { return e < x.valuation() ? Fq{} : x.coeff(e); };
  // y_e = Σ_j d_j x_{e+j}
  for (unsigned dd = 0; dd <= deg_d; ++dd) {
    if (static_cast<std::int64_t>(eqs.size()) - static_cast<std::int64_t>(dd) < static_cast<std::int64_t>(margin)) {
      return std::nullopt;
    }
    std::vector<std::vector<Fq>> a;
    std::vector<Fq> rhs;
    for (auto e : eqs) {
      std::vector<Fq> row(dd);
      for (unsigned j = 0; j < dd; ++j) row[j] = coeff(e + j);
      a.push_back(std::move(row));
      rhs.push_back(f.neg(coeff(e + dd)));
    }
    auto sol = solve_fq(f, std::move(a), std::move(rhs), dd);
    if (!sol) continue;
    std::vector<Fq> dc = *sol;
    dc.push_back(f.one());
    const Poly den(f, dc, Var::theta);
    const LaurentSeries y = x * LaurentSeries::from_poly(den);
    std::vector<Fq> nc(deg_n + 1);
    for (std::int64_t e = -static_cast<std::int64_t>(deg_n); e <= 0; ++e) {
      if (e >= y.valuation() && e < y.precision()) nc[static_cast<std::size_t>(-e)] = y.coeff(e);
    }
    return RatFunc(Poly(f, std::move(nc), Var::theta), den);
  }
  return std::nullopt;
}

NumericOracle::NumericOracle(const CarlitzContext& ctx, std::uint64_t max_terms) : ctx_(ctx), max_terms_(max_terms) {}

LaurentSeries NumericOracle::power_sum_series(unsigned d, unsigned k, std::int64_t prec) const {
  const FiniteField& f = ctx_.field();
  const std::uint32_t q = ctx_.q();
  if (prec <= power_sum_valuation_bound(q, ctx_.p(), d, k)) return LaurentSeries(f, prec);
  const auto key = std::make_pair(d, k);
  {
    std::shared_lock lock(mu_);
    auto it = sums_.find(key);
    if (it != sums_.end() && it->second.precision() >= prec) return it->second.truncated(prec);
  }
  const std::uint64_t count = ipow(q, d);
  if (d > 40 || count > max_terms_) {
    throw std::out_of_range("power sum S_" + std::to_string(d) + " needs " + std::to_string(count) +
                            " terms, above the enumeration bound");
  }
  const std::size_t dk = static_cast<std::size_t>(d) * k;
  const std::int64_t len = prec - static_cast<std::int64_t>(dk);
  std::vector<Fq> acc(static_cast<std::size_t>(std::max<std::int64_t>(len, 0)));
  std::vector<Fq> g(acc.size());
  std::vector<Fq> lower(d);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (unsigned j = 0; j < d; ++j, rest /= q) lower[j] = Fq{static_cast<std::uint32_t>(rest % q)};
    std::vector<Fq> ac(lower);
    ac.push_back(f.one());
    const Poly ak = Poly(f, std::move(ac), Var::theta).pow(k);
    // a^{−k} = u^{dk} / (Σ_i r_i u^i), r_i the coefficient of θ^{dk−i}.
    for (std::size_t m = 0; m < g.size(); ++m) {
      Fq s = m == 0 ? f.one() : Fq{};
      const std::size_t top = std::min(m, dk);
      for (std::size_t i = 1; i <= top; ++i) {
        const Fq r = ak.coeff(dk - i);
        if (!r.is_zero()) s = f.sub(s, f.mul(r, g[m - i]));
      }
      g[m] = s;
      acc[m] = f.add(acc[m], s);
    }
  }
  LaurentSeries out(f, static_cast<std::int64_t>(dk), std::move(acc), prec);
  std::unique_lock lock(mu_);
  auto& slot = sums_[key];
  if (slot.field() == nullptr || slot.precision() < prec) slot = out;
  return out;
}

RatFunc NumericOracle::power_sum(unsigned d, unsigned k) const {
  const FiniteField& f = ctx_.field();
  const Poly ld = ctx_.L(d).pow(k);
  const std::int64_t deg = ld.degree().value();
  const LaurentSeries s = power_sum_series(d, k, deg + 1);
  const LaurentSeries y = s * LaurentSeries::from_poly(ld);
  std::vector<Fq> nc(static_cast<std::size_t>(deg) + 1);
  for (std::int64_t e = -deg; e <= 0; ++e) {
    if (e >= y.valuation()) nc[static_cast<std::size_t>(-e)] = y.coeff(e);
  }
  for (std::int64_t e = std::max<std::int64_t>(1, y.valuation()); e < y.precision(); ++e) {
    if (!y.coeff(e).is_zero()) throw MathError("power sum times L_d^k is not a polynomial");
  }
  return RatFunc(Poly(f, std::move(nc), Var::theta), ld);
}

ZetaEvaluation NumericOracle::zeta_single(unsigned n, unsigned d_max, std::int64_t cap) const {
  const FiniteField& f = ctx_.field();
  if (cap < 0) cap = static_cast<std::int64_t>(n) * (d_max + 1);
  const std::int64_t prec = std::min(cap, power_sum_valuation_bound(ctx_.q(), ctx_.p(), d_max + 1, n));
  LaurentSeries acc(f, prec);
  for (unsigned i = 0; i <= d_max; ++i) acc += power_sum_series(i, n, prec);
  return {{n}, d_max, acc.truncated(prec), prec};
}

ZetaEvaluation NumericOracle::zeta_double(unsigned s1, unsigned s2, unsigned d_max, std::int64_t cap) const {
  const FiniteField& f = ctx_.field();
  if (cap < 0) cap = static_cast<std::int64_t>(s1) * (d_max + 1);
  const std::int64_t prec = std::min(cap, power_sum_valuation_bound(ctx_.q(), ctx_.p(), d_max + 1, s1));
  LaurentSeries acc(f, prec);
  LaurentSeries inner(f, prec);
  for (unsigned i1 = 1; i1 <= d_max; ++i1) {
    inner += power_sum_series(i1 - 1, s2, prec);
    if (power_sum_valuation_bound(ctx_.q(), ctx_.p(), i1, s1) >= prec) continue;
    acc += power_sum_series(i1, s1, prec) * inner;
  }
  return {{s1, s2}, d_max, acc.truncated(prec), prec};
}

LaurentSeries NumericOracle::pi_power(unsigned n, std::int64_t prec) const {
  const FiniteField& f = ctx_.field();
  const std::uint32_t q = ctx_.q();
  if (n % (q - 1) != 0) throw std::invalid_argument("pi power needs (q-1) | n");
  const std::int64_t w = static_cast<std::int64_t>(n) * q / (q - 1);
  const std::int64_t rel = prec + w;
  if (rel <= 0) return LaurentSeries(f, prec);
  const auto len = static_cast<std::size_t>(rel);
  // Q = Π_{i ≥ 1} (1 − u^{q^i − 1}); π̃^n = ±u^{−w} Q^{−n}.
  Poly prod = Poly::constant(f, f.one(), Var::theta);
  for (std::uint64_t qi = q; qi - 1 < len; qi *= q) {
    prod = (prod - prod.shifted(qi - 1)).slice(0, len);
  }
  Poly qn = Poly::constant(f, f.one(), Var::theta);
  Poly base = prod;
  for (std::uint64_t e = n; e > 0; e >>= 1) {
    if (e & 1) qn = (qn * base).slice(0, len);
    if (e > 1) base = (base * base).slice(0, len);
  }
  std::vector<Fq> c = qn.coeffs();
  LaurentSeries s = LaurentSeries(f, 0, std::move(c), rel).inv().mul_theta_power(w);
  const std::uint64_t sign_exp = static_cast<std::uint64_t>(q) * (n / (q - 1));
  if (sign_exp % 2 == 1) s = -s;
  return s.truncated(prec);
}

LaurentSeries NumericOracle::evaluate(const std::vector<ZetaTerm>& terms, unsigned d_max, std::int64_t prec) const {
  const FiniteField& f = ctx_.field();
  LaurentSeries acc(f, LaurentSeries::kExact);
  for (const auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    const std::int64_t cap = prec + t.coeff.degree().value();
    const ZetaEvaluation z = t.s2 == 0 ? zeta_single(t.s1, d_max, cap) : zeta_double(t.s1, t.s2, d_max, cap);
    acc += LaurentSeries::from_poly(t.coeff) * z.value;
  }
  return acc.is_exact() ? acc : acc.truncated(std::min(acc.precision(), prec));
}

VerifyOutcome NumericOracle::verify(const std::vector<ZetaTerm>& terms, unsigned n, unsigned d_max,
                                    unsigned margin) const {
  const FiniteField& f = ctx_.field();
  const std::uint32_t q = ctx_.q();
  const bool even = n % (q - 1) == 0;
  constexpr std::int64_t kSlack = 4;
  VerifyOutcome out;

  std::vector<LaurentSeries> vals;
  std::int64_t floor_bound = LaurentSeries::kExact;
  for (const auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    const std::int64_t lowest = t.s2 == 0 ? 0 : power_sum_valuation_bound(q, ctx_.p(), 1, t.s1);
    floor_bound = std::min(floor_bound, lowest - t.coeff.degree().value());
  }
  if (floor_bound == LaurentSeries::kExact) {
    out.status = VerifyStatus::pass;
    if (even) out.c0 = Poly(f, Var::theta);
    out.margin = LaurentSeries::kExact;
    out.precision = LaurentSeries::kExact;
    out.detail = "zero relation";
    return out;
  }

  if (even) {
    const std::int64_t w = static_cast<std::int64_t>(n) * q / (q - 1);
    const std::int64_t target = std::max<std::int64_t>(margin + 1 + kSlack - w, floor_bound + 1);
    const LaurentSeries l = evaluate(terms, d_max, target);
    out.precision = l.precision();
    const std::int64_t rel = l.precision() - (l.is_zero() ? l.precision() : l.valuation());
    const LaurentSeries x = l * pi_power(n, std::max<std::int64_t>(rel, 1) - w).inv(std::max<std::int64_t>(rel, 1));
    const std::int64_t px = std::min(x.precision(), l.precision() + w);
    const LaurentSeries xt = x.truncated(px);
    out.margin = px - 1;
    if (out.margin < static_cast<std::int64_t>(margin)) {
      out.status = VerifyStatus::inconclusive;
      out.detail = "precision " + std::to_string(px) + " of L/pi^n below margin";
      return out;
    }
    const unsigned deg_n = xt.is_zero() ? 0 : static_cast<unsigned>(std::max<std::int64_t>(0, -xt.valuation()));
    auto r = rational_reconstruct(xt, deg_n, 0, margin);
    if (r && r->is_polynomial()) {
      out.status = VerifyStatus::pass;
      out.c0 = r->num();
      out.detail = "L/pi^n reconstructed";
    } else {
      out.status = VerifyStatus::fail;
      out.detail = "L/pi^n is not a polynomial to precision " + std::to_string(px);
    }
    return out;
  }

  const std::int64_t target = floor_bound + margin + 1 + kSlack;
  for (const auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    vals.push_back(evaluate({t}, d_max, target));
  }
  LaurentSeries l(f, LaurentSeries::kExact);
  for (const auto& v : vals) l += v;
  const std::int64_t lead = term_floor(vals);
  out.precision = l.precision();
  out.margin = l.precision() - lead - 1;
  if (!l.is_zero()) {
    out.status = VerifyStatus::fail;
    out.detail = "L does not vanish: valuation " + std::to_string(l.valuation());
  } else if (out.margin < static_cast<std::int64_t>(margin)) {
    out.status = VerifyStatus::inconclusive;
    out.detail = "L vanishes only to precision " + std::to_string(l.precision());
  } else {
    out.status = VerifyStatus::pass;
    out.detail = "L vanishes";
  }
  return out;
}

int NumericOracle::calibrate_euler_sign(unsigned d_max) const {
  const std::uint32_t q = ctx_.q();
  constexpr std::int64_t kAgree = 20;
  auto matches = [&](unsigned m, int sign) {
    const std::int64_t w = static_cast<std::int64_t>(m) * q / (q - 1);
    const ZetaEvaluation z = zeta_single(m, d_max, kAgree + 1);
    if (z.precision <= 0) throw MathError("not enough precision to calibrate the Euler ratio sign");
    RatFunc g = ctx_.euler_ratio_raw(m);
    if (sign < 0) g = -g;
    const LaurentSeries lhs = z.value * LaurentSeries::from_poly(g.den());
    const LaurentSeries rhs = LaurentSeries::from_poly(g.num()) * pi_power(m, z.precision + 2 * w + 64);
    return (lhs - rhs).truncated(z.precision).is_zero();
  };
  const unsigned m0 = q - 1;
  int sign = 0;
  if (matches(m0, 1)) {
    sign = 1;
  } else if (matches(m0, -1)) {
    sign = -1;
  } else {
    throw MathError("zeta(q-1) matches neither sign of the Euler ratio");
  }
  for (unsigned m = 2 * m0; m <= 3 * m0; m += m0) {
    if (!matches(m, sign)) throw MathError("Euler ratio sign is inconsistent at m = " + std::to_string(m));
  }
  ctx_.set_euler_sign(sign);
  return sign;
}

std::vector<ZetaTerm> induced_terms(const CarlitzContext& ctx, const std::vector<std::pair<unsigned, unsigned>>& labels,
                                    const std::vector<Poly>& a) {
  if (labels.size() != a.size()) throw std::invalid_argument("relation length does not match its points");
  std::vector<ZetaTerm> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [s1, s2] = labels[i];
    const Poly at = a[i].renamed(Var::theta);
    if (s2 == 0) {
      out.push_back({s1, 0, at * ctx.gamma(s1)});
    } else {
      const Poly alpha = ctx.alpha_for(s2).renamed(Var::theta);
      out.push_back({s1, s2, at * alpha * ctx.gamma(s1) * ctx.gamma(s2)});
    }
  }
  return out;
}

}  // namespace dzv

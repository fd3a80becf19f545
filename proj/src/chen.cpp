#include "dzv/chen.hpp"

#include <stdexcept>
#include <string>

namespace dzv {

ChenVector chen_vector(const CarlitzContext& ctx, unsigned r, unsigned s) {
  const std::uint32_t q = ctx.q();
  const std::uint32_t p = ctx.p();
  if (r == 0 || s == 0 || r > s || r % (q - 1) != 0 || s % (q - 1) != 0) {
    throw std::invalid_argument("chen_vector needs A-even 1 <= r <= s, got (" + std::to_string(r) + ", " +
                                std::to_string(s) + ")");
  }
  ChenVector v;
  v.n = r + s;
  v.r = r;
  v.s = s;
  v.pi = ctx.euler_ratio(r) * ctx.euler_ratio(s) - ctx.euler_ratio(v.n);
  v.dz.assign(v.n - 1, 0);
  auto bump = [&](unsigned i, std::int64_t c) {
    const std::int64_t m = static_cast<std::int64_t>(p);
    v.dz[i - 1] = static_cast<std::uint32_t>((((v.dz[i - 1] + c) % m) + m) % m);
  };
  bump(r, 1);
  bump(s, 1);
  for (unsigned j = q - 1; j < v.n; j += q - 1) {
    const std::int64_t bs = binomial_mod(j - 1, s - 1, p);
    const std::int64_t br = binomial_mod(j - 1, r - 1, p);
    bump(v.n - j, (s % 2 == 1 ? bs : -bs) + (r % 2 == 1 ? br : -br));
  }
  return v;
}

std::vector<ChenVector> chen_vectors(const CarlitzContext& ctx, unsigned n) {
  const std::uint32_t q = ctx.q();
  std::vector<ChenVector> out;
  for (unsigned r = q - 1; 2 * r <= n; r += q - 1) {
    if ((n - r) % (q - 1) == 0) out.push_back(chen_vector(ctx, r, n - r));
  }
  return out;
}

std::size_t fp_linear_count(const CarlitzContext& ctx, unsigned n) {
  const FiniteField& f = ctx.field();
  if (n < 2 || n % (ctx.q() - 1) != 0) {
    throw std::invalid_argument("fp_linear_count needs an A-even weight >= 2, got " + std::to_string(n));
  }
  std::vector<std::vector<RatFunc>> m;
  for (const auto& v : chen_vectors(ctx, n)) {
    std::vector<RatFunc> row{v.pi};
    for (auto c : v.dz) row.push_back(RatFunc(Poly::constant(f, f.from_int(c), Var::theta)));
    m.push_back(std::move(row));
  }
  const std::size_t cols = n;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const RatFunc inv = m[rank][c].inv();
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][c].is_zero()) continue;
      const RatFunc k = m[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= k * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace dzv

#include "dzv/carlitz.hpp"

#include <mutex>
#include <stdexcept>

#include "dzv/errors.hpp"

namespace dzv {

Degree sup_degree(const TensorPoint& z) {
  Degree d = Degree::neg_inf();
  for (const auto& x : z) d = std::max(d, x.degree());
  return d;
}

bool is_zero_point(const TensorPoint& z) {
  for (const auto& x : z) {
    if (!x.is_zero()) return false;
  }
  return true;
}

CarlitzContext::CarlitzContext(std::uint32_t p, std::uint32_t e) : field_(p, e) {
  d_.push_back(Poly::constant(field_, field_.one(), Var::theta));
  l_.push_back(Poly::constant(field_, field_.one(), Var::theta));
  h_.push_back(BiPoly::one(field_));
}

std::unique_ptr<CarlitzContext> CarlitzContext::of_order(std::uint32_t q) {
  const FiniteField f = FiniteField::of_order(q);
  return std::make_unique<CarlitzContext>(f.p(), f.e());
}

const Poly& CarlitzContext::D(unsigned i) const {
  {
    std::shared_lock lock(d_mu_);
    if (i < d_.size()) return d_[i];
  }
  std::unique_lock lock(d_mu_);
  while (d_.size() <= i) {
    const auto k = static_cast<unsigned>(d_.size());
    std::uint64_t qk = 1;
    for (unsigned j = 0; j < k; ++j) qk *= q();
    const Poly factor = theta_pow(qk) - theta_pow(1);
    d_.push_back(factor * d_.back().frobenius(1));
  }
  return d_[i];
}

const Poly& CarlitzContext::L(unsigned i) const {
  {
    std::shared_lock lock(l_mu_);
    if (i < l_.size()) return l_[i];
  }
  std::unique_lock lock(l_mu_);
  while (l_.size() <= i) {
    const auto k = static_cast<unsigned>(l_.size());
    std::uint64_t qk = 1;
    for (unsigned j = 0; j < k; ++j) qk *= q();
    l_.push_back((theta_pow(1) - theta_pow(qk)) * l_.back());
  }
  return l_[i];
}

Poly CarlitzContext::gamma(std::uint64_t m) const {
  if (m == 0) throw std::invalid_argument("Carlitz factorial needs m >= 1");
  Poly r = Poly::constant(field_, field_.one(), Var::theta);
  std::uint64_t rest = m - 1;
  for (unsigned i = 0; rest > 0; ++i, rest /= q()) {
    const std::uint64_t digit = rest % q();
    if (digit) r *= D(i).pow(digit);
  }
  return r;
}

BiPoly CarlitzContext::g_poly(unsigned i) const {
  BiPoly r = BiPoly::one(field_);
  if (i == 0) return r;
  std::uint64_t qi = 1;
  for (unsigned j = 0; j < i; ++j) qi *= q();
  const BiPoly tq = BiPoly::from_t(Poly::monomial(field_, field_.one(), qi, Var::t));
  std::uint64_t qj = 1;
  for (unsigned j = 1; j <= i; ++j) {
    qj *= q();
    r *= tq - BiPoly::from_theta(theta_pow(qj));
  }
  return r;
}

const BiPoly& CarlitzContext::anderson_thakur(std::size_t n) const {
  {
    std::shared_lock lock(h_mu_);
    if (n < h_.size()) return h_[n];
  }
  std::unique_lock lock(h_mu_);
  while (h_.size() <= n) {
    const std::uint64_t k = h_.size();
    // H_k / Γ_{k+1}(t) = Σ_{q^i ≤ k} G_i(θ)/D_i(t) · H_{k−q^i}/Γ_{k−q^i+1}(t)
    const Poly num = gamma_t(k + 1);
    std::vector<std::pair<BiPoly, Poly>> terms;  // (G_i H_{k−q^i}, D_i(t) Γ_{k−q^i+1}(t))
    Poly lcm = Poly::constant(field_, field_.one(), Var::t);
    std::uint64_t qi = 1;
    for (unsigned i = 0; qi <= k; ++i, qi *= q()) {
      Poly den = D_t(i) * gamma_t(k - qi + 1);
      BiPoly top = g_poly(i) * h_[k - qi];
      lcm = lcm.exact_div(Poly::gcd(lcm, den)) * den;
      terms.emplace_back(std::move(top), std::move(den));
    }
    lcm = lcm.monic();
    BiPoly acc(field_);
    for (auto& [top, den] : terms) acc += top.mul_t(lcm.exact_div(den));
    const Poly g = Poly::gcd(num, lcm);
    const Poly num_r = num.exact_div(g);
    const Poly lcm_r = lcm.exact_div(g);
    BiPoly h = acc.exact_div_t(lcm_r).mul_t(num_r);
    h_.push_back(std::move(h));
  }
  return h_[n];
}

std::size_t CarlitzContext::anderson_thakur_count() const {
  std::shared_lock lock(h_mu_);
  return h_.size();
}

bool CarlitzContext::install_anderson_thakur(std::size_t n, BiPoly h) const {
  std::unique_lock lock(h_mu_);
  if (n != h_.size()) return false;
  h_.push_back(std::move(h));
  return true;
}

Poly CarlitzContext::alpha_for(std::uint64_t s2) const {
  const std::uint64_t qq = q();
  if (s2 == 0 || s2 % (qq - 1) != 0) {
    throw std::invalid_argument("alpha is defined only for s2 divisible by q-1");
  }
  // q^h for the largest h with (q^h − 1) | s2
  std::uint64_t qh = qq;
  for (std::uint64_t next = qq * qq; next - 1 <= s2; next *= qq) {
    if (s2 % (next - 1) == 0) qh = next;
  }
  std::uint64_t rest = s2 / (qh - 1);
  std::uint64_t pl = 1;
  while (rest % p() == 0) {
    rest /= p();
    pl *= p();
  }
  const Poly base = Poly::monomial(field_, field_.one(), qh, Var::t) - Poly::x(field_, Var::t);
  return base.pow(pl);
}

TensorPoint CarlitzContext::t_step(const TensorPoint& z) const {
  const std::size_t n = z.size();
  TensorPoint out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Poly next = i + 1 < n ? z[i + 1] : z[0].frobenius(1);
    out[i] = z[i].shifted(1) + next;
    if (out[i].field() == nullptr) out[i] = Poly(field_, Var::theta);
  }
  return out;
}

TensorPoint CarlitzContext::carlitz_action(const Poly& a, const TensorPoint& z) const {
  const std::size_t n = z.size();
  TensorPoint acc(n, Poly(field_, Var::theta));
  for (std::size_t k = a.size(); k-- > 0;) {
    acc = t_step(acc);
    const Fq c = a.coeff(k);
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) acc[i] += z[i].scaled(c).renamed(Var::theta);
  }
  return acc;
}

std::vector<RatFunc> CarlitzContext::log_bottom_row(unsigned i, unsigned n) const {
  if (i == 0) throw std::invalid_argument("log bottom row index starts at 1");
  std::uint64_t qi = 1;
  for (unsigned j = 0; j < i; ++j) qi *= q();
  const Poly diff = theta_pow(qi) - theta_pow(1);
  const Poly den = L(i).pow(n);
  std::vector<RatFunc> row;
  row.reserve(n);
  for (unsigned l = 1; l <= n; ++l) {
    Poly num = diff.pow(n - l);
    if ((n - l) % 2 == 1) num = -num;
    row.emplace_back(num, den);
  }
  return row;
}

RatFunc CarlitzContext::euler_ratio_raw(std::uint64_t m) const {
  if (m == 0 || m % (q() - 1) != 0) throw std::invalid_argument("Euler ratio needs (q-1) | m, m >= 1");
  {
    std::shared_lock lock(euler_mu_);
    if (m < euler_.size()) return euler_[m];
  }
  std::unique_lock lock(euler_mu_);
  // b = 1 / (Σ_i z^{q^i−1}/D_i), coefficients b_0 .. b_m.
  std::vector<std::pair<std::uint64_t, RatFunc>> c;  // (exponent q^i − 1, 1/D_i), i ≥ 1
  for (unsigned i = 1;; ++i) {
    std::uint64_t qi = 1;
    for (unsigned j = 0; j < i; ++j) qi *= q();
    if (qi - 1 > m) break;
    c.emplace_back(qi - 1, RatFunc(Poly::constant(field_, field_.one(), Var::theta), D(i)));
  }
  if (euler_.empty()) euler_.push_back(RatFunc::one(field_, Var::theta));
  while (euler_.size() <= m) {
    const std::uint64_t k = euler_.size();
    RatFunc s = RatFunc::zero(field_, Var::theta);
    for (const auto& [e, inv_d] : c) {
      if (e > k) break;
      const RatFunc& prev = euler_[k - e];
      if (!prev.is_zero()) s -= inv_d * prev;
    }
    euler_.push_back(s);
  }
  return euler_[m];
}

RatFunc CarlitzContext::euler_ratio(std::uint64_t m) const {
  const int s = euler_sign_.load();
  if (s == 0) throw std::logic_error("Euler ratio sign has not been calibrated for this field");
  RatFunc r = euler_ratio_raw(m);
  return s > 0 ? r : -r;
}

void CarlitzContext::set_euler_sign(int sign) const {
  if (sign != 1 && sign != -1) throw std::invalid_argument("Euler sign must be +1 or -1");
  euler_sign_.store(sign);
}

std::optional<int> CarlitzContext::euler_sign() const {
  const int s = euler_sign_.load();
  if (s == 0) return std::nullopt;
  return s;
}

}  // namespace dzv

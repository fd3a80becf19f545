#include "dzv/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dzv/errors.hpp"

namespace dzv {

const char* var_name(Var v) noexcept { return v == Var::t ? "t" : "θ"; }

std::string Degree::str() const { return is_neg_inf() ? std::string("-inf") : std::to_string(v_); }

namespace kernel {
namespace {

constexpr std::size_t kKaratsubaThreshold = 40;

void schoolbook(const FiniteField& f, const Fq* a, std::size_t na, const Fq* b, std::size_t nb, Fq* out) {
  if (f.e() == 1) {
    const std::uint64_t p = f.p();
    std::vector<std::uint64_t> acc(na + nb - 1, 0);
    for (std::size_t i = 0; i < na; ++i) {
      const std::uint64_t ai = a[i].value;
      if (ai == 0) continue;
      std::uint64_t* row = acc.data() + i;
      for (std::size_t j = 0; j < nb; ++j) row[j] += ai * b[j].value;
    }
    for (std::size_t k = 0; k < acc.size(); ++k) {
      out[k] = f.add(out[k], Fq{static_cast<std::uint32_t>(acc[k] % p)});
    }
    return;
  }
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < nb; ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
}

void add_into(const FiniteField& f, Fq* dst, const Fq* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = f.add(dst[i], src[i]);
}

void sub_into(const FiniteField& f, Fq* dst, const Fq* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = f.sub(dst[i], src[i]);
}

// out[0 .. na+nb-1) += a*b
void karatsuba(const FiniteField& f, const Fq* a, std::size_t na, const Fq* b, std::size_t nb, Fq* out) {
  if (na == 0 || nb == 0) return;
  if (na < nb) {
    std::swap(a, b);
    std::swap(na, nb);
  }
  if (nb < kKaratsubaThreshold) {
    schoolbook(f, a, na, b, nb, out);
    return;
  }
  if (na >= 2 * nb) {
    for (std::size_t off = 0; off < na; off += nb) {
      karatsuba(f, a + off, std::min(nb, na - off), b, nb, out + off);
    }
    return;
  }
  const std::size_t m = (na + 1) / 2;
  const std::size_t a1n = na - m;
  const std::size_t b0n = std::min(m, nb);
  const std::size_t b1n = nb > m ? nb - m : 0;

  std::vector<Fq> z0(2 * m, Fq{});
  karatsuba(f, a, m, b, b0n, z0.data());
  std::vector<Fq> z2(a1n + std::max<std::size_t>(b1n, 1), Fq{});
  karatsuba(f, a + m, a1n, b + m, b1n, z2.data());

  std::vector<Fq> sa(a, a + m);
  add_into(f, sa.data(), a + m, a1n);
  std::vector<Fq> sb(b, b + b0n);
  sb.resize(m, Fq{});
  add_into(f, sb.data(), b + m, b1n);
  std::vector<Fq> z1(2 * m, Fq{});
  karatsuba(f, sa.data(), m, sb.data(), m, z1.data());
  sub_into(f, z1.data(), z0.data(), z0.size());
  sub_into(f, z1.data(), z2.data(), std::min(z2.size(), z1.size()));

  const std::size_t total = na + nb - 1;
  add_into(f, out, z0.data(), std::min(z0.size(), total));
  add_into(f, out + m, z1.data(), std::min(z1.size(), total - m));
  if (b1n > 0) add_into(f, out + 2 * m, z2.data(), std::min(z2.size(), total - 2 * m));
}

}  // namespace

void multiply(const FiniteField& f, std::span<const Fq> a, std::span<const Fq> b, std::vector<Fq>& out) {
  out.clear();
  if (a.empty() || b.empty()) return;
  out.assign(a.size() + b.size() - 1, Fq{});
  karatsuba(f, a.data(), a.size(), b.data(), b.size(), out.data());
}

void multiply_low(const FiniteField& f, std::span<const Fq> a, std::span<const Fq> b, std::size_t limit,
                  std::vector<Fq>& out) {
  multiply(f, a.first(std::min(a.size(), limit)), b.first(std::min(b.size(), limit)), out);
  if (out.size() > limit) out.resize(limit);
}

}  // namespace kernel

Poly::Poly(const FiniteField& field, std::vector<Fq> coeffs, Var var)
    : field_(&field), var_(var), c_(std::move(coeffs)) {
  trim();
}

Poly Poly::constant(const FiniteField& field, Fq c, Var var) {
  Poly r(field, var);
  if (!c.is_zero()) r.c_.push_back(c);
  return r;
}

Poly Poly::monomial(const FiniteField& field, Fq c, std::size_t k, Var var) {
  Poly r(field, var);
  if (!c.is_zero()) {
    r.c_.assign(k + 1, Fq{});
    r.c_[k] = c;
  }
  return r;
}

Poly Poly::from_ints(const FiniteField& field, std::initializer_list<std::int64_t> c, Var var) {
  std::vector<Fq> v;
  v.reserve(c.size());
  for (auto x : c) v.push_back(field.from_int(x));
  return Poly(field, std::move(v), var);
}

void Poly::trim() noexcept {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

std::size_t Poly::weight() const noexcept {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](Fq c) { return !c.is_zero(); }));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = field_->neg(c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.empty()) return *this;
  field_ = any_field(o);
  if (c_.empty()) var_ = o.var_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Fq{});
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.empty()) return *this;
  field_ = any_field(o);
  if (c_.empty()) var_ = o.var_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Fq{});
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  r.field_ = a.any_field(b);
  r.var_ = a.c_.empty() ? b.var_ : a.var_;
  if (a.c_.empty() || b.c_.empty()) return r;
  kernel::multiply(*r.field_, a.c_, b.c_, r.c_);
  r.trim();
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::scaled(Fq c) const {
  if (c_.empty()) return *this;
  if (c.is_zero()) return Poly(*field_, var_);
  Poly r = *this;
  if (c.value != 1) {
    for (auto& x : r.c_) x = field_->mul(x, c);
  }
  return r;
}

Poly Poly::shifted(std::size_t k) const {
  Poly r = *this;
  if (!r.c_.empty() && k > 0) r.c_.insert(r.c_.begin(), k, Fq{});
  return r;
}

Poly Poly::slice(std::size_t lo, std::size_t hi) const {
  if (c_.empty()) return *this;
  Poly r(*field_, var_);
  hi = std::min(hi, c_.size());
  if (lo < hi) r.c_.assign(c_.begin() + static_cast<std::ptrdiff_t>(lo), c_.begin() + static_cast<std::ptrdiff_t>(hi));
  r.trim();
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  const FiniteField& f = *d.field_;
  Poly rem = *this;
  rem.field_ = &f;
  Poly quo(f, var_);
  if (c_.size() < d.c_.size()) return {quo, rem};
  const std::size_t dn = d.c_.size() - 1;
  const Fq lead_inv = f.inv(d.lead());
  quo.c_.assign(c_.size() - dn, Fq{});
  for (std::size_t k = c_.size(); k-- > dn;) {
    const Fq top = rem.c_[k];
    if (top.is_zero()) continue;
    const Fq qc = f.mul(top, lead_inv);
    quo.c_[k - dn] = qc;
    const std::size_t base = k - dn;
    for (std::size_t i = 0; i < dn; ++i) {
      if (!d.c_[i].is_zero()) rem.c_[base + i] = f.sub(rem.c_[base + i], f.mul(qc, d.c_[i]));
    }
    rem.c_[k] = Fq{};
  }
  quo.trim();
  rem.trim();
  return {quo, rem};
}

Poly Poly::exact_div(const Poly& d) const {
  auto [q, r] = divmod(d);
  if (!r.is_zero()) throw MathError("inexact polynomial division: " + str() + " / " + d.str());
  return q;
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

Poly Poly::monic() const {
  if (c_.empty() || lead().value == 1) return *this;
  return scaled(field_->inv(lead()));
}

Poly Poly::pow(std::uint64_t k) const {
  Poly result = constant(*field_, field_->one(), var_);
  Poly base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Fq Poly::eval(Fq x) const noexcept {
  Fq r{};
  for (std::size_t i = c_.size(); i-- > 0;) r = field_->add(field_->mul(r, x), c_[i]);
  return r;
}

Poly Poly::frobenius(unsigned m) const {
  if (m == 0 || c_.empty()) return *this;
  std::size_t step = 1;
  for (unsigned i = 0; i < m; ++i) step *= field_->q();
  Poly r(*field_, var_);
  r.c_.assign((c_.size() - 1) * step + 1, Fq{});
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * step] = c_[i];
  return r;
}

Poly Poly::renamed(Var v) const {
  Poly r = *this;
  r.var_ = v;
  return r;
}

std::string Poly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  const bool prime = field_->e() == 1;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Fq c = c_[i];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = c.value == 1;
    if (!unit || i == 0) {
      if (prime) {
        os << c.value;
      } else {
        os << '{' << c.value << '}';
      }
    }
    if (i > 0) {
      if (!unit) os << '*';
      os << var_name(var_);
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

}  // namespace dzv

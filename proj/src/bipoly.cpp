#include "dzv/bipoly.hpp"

#include <algorithm>
#include <sstream>

#include "dzv/errors.hpp"

namespace dzv {

namespace {

const Poly kZero;

// Above this many t-coefficients in both factors, products go through
// Kronecker substitution θ-blocks into one univariate multiplication.
constexpr std::size_t kKroneckerMin = 4;

}  // namespace

BiPoly::BiPoly(const FiniteField& field, std::vector<Poly> coeffs) : field_(&field), c_(std::move(coeffs)) {
  for (auto& c : c_) c = c.renamed(Var::theta);
  trim();
}

BiPoly BiPoly::from_t(const Poly& a) {
  BiPoly r;
  r.field_ = a.field();
  if (a.is_zero()) return r;
  r.c_.reserve(a.size());
  for (auto c : a.coeffs()) r.c_.push_back(Poly::constant(*a.field(), c, Var::theta));
  r.trim();
  return r;
}

BiPoly BiPoly::from_theta(const Poly& c) {
  BiPoly r;
  r.field_ = c.field();
  if (!c.is_zero()) r.c_.push_back(c.renamed(Var::theta));
  return r;
}

BiPoly BiPoly::one(const FiniteField& field) { return from_theta(Poly::constant(field, field.one(), Var::theta)); }

BiPoly BiPoly::t_minus_theta(const FiniteField& field) {
  std::vector<Poly> c;
  c.push_back(Poly::monomial(field, field.neg(field.one()), 1, Var::theta));
  c.push_back(Poly::constant(field, field.one(), Var::theta));
  return BiPoly(field, std::move(c));
}

void BiPoly::trim() noexcept {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Degree BiPoly::deg_theta() const noexcept {
  Degree d = Degree::neg_inf();
  for (const auto& c : c_) d = std::max(d, c.degree());
  return d;
}

const Poly& BiPoly::coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : kZero; }

BiPoly BiPoly::operator-() const {
  BiPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  field_ = any_field(o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Poly(*field_, Var::theta));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  field_ = any_field(o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Poly(*field_, Var::theta));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  r.field_ = a.any_field(b);
  if (a.c_.empty() || b.c_.empty()) return r;
  const FiniteField& f = *r.field_;
  if (a.c_.size() < kKroneckerMin || b.c_.size() < kKroneckerMin) {
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Poly(f, Var::theta));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (!b.c_[j].is_zero()) r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    r.trim();
    return r;
  }
  const auto da = static_cast<std::size_t>(a.deg_theta().value());
  const auto db = static_cast<std::size_t>(b.deg_theta().value());
  const std::size_t stride = da + db + 1;
  auto pack = [&](const BiPoly& x) {
    std::vector<Fq> v(x.c_.size() * stride, Fq{});
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      std::copy(x.c_[i].coeffs().begin(), x.c_[i].coeffs().end(), v.begin() + static_cast<std::ptrdiff_t>(i * stride));
    }
    return v;
  };
  const auto pa = pack(a);
  const auto pb = pack(b);
  std::vector<Fq> prod;
  kernel::multiply(f, pa, pb, prod);
  const std::size_t nt = a.c_.size() + b.c_.size() - 1;
  r.c_.reserve(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const std::size_t lo = i * stride;
    const std::size_t hi = std::min(prod.size(), lo + stride);
    std::vector<Fq> block;
    if (lo < hi) block.assign(prod.begin() + static_cast<std::ptrdiff_t>(lo), prod.begin() + static_cast<std::ptrdiff_t>(hi));
    r.c_.emplace_back(f, std::move(block), Var::theta);
  }
  r.trim();
  return r;
}

BiPoly BiPoly::mul_theta(const Poly& c) const {
  BiPoly r;
  r.field_ = field_ ? field_ : c.field();
  if (c.is_zero()) return r;
  r.c_.reserve(c_.size());
  for (const auto& x : c_) r.c_.push_back((x * c).renamed(Var::theta));
  r.trim();
  return r;
}

BiPoly BiPoly::mul_t(const Poly& a) const { return *this * from_t(a); }

BiPoly BiPoly::scaled(Fq c) const {
  BiPoly r = *this;
  for (auto& x : r.c_) x = x.scaled(c);
  r.trim();
  return r;
}

BiPoly BiPoly::shifted_t(std::size_t k) const {
  BiPoly r = *this;
  if (!r.c_.empty() && k > 0) r.c_.insert(r.c_.begin(), k, Poly(*field_, Var::theta));
  return r;
}

BiPoly BiPoly::pow(std::uint64_t k) const {
  BiPoly result = one(*field_);
  BiPoly base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

BiPoly BiPoly::twist(unsigned m) const {
  if (m == 0) return *this;
  BiPoly r = *this;
  for (auto& c : r.c_) c = c.frobenius(m);
  return r;
}

BiPoly BiPoly::exact_div_t(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  const FiniteField& f = *d.field();
  BiPoly rem = *this;
  rem.field_ = &f;
  BiPoly quo(f);
  if (c_.size() < d.size()) {
    if (!rem.is_zero()) throw MathError("inexact division of bivariate polynomial by " + d.str());
    return quo;
  }
  const std::size_t dn = d.size() - 1;
  const Fq lead_inv = f.inv(d.lead());
  quo.c_.assign(c_.size() - dn, Poly(f, Var::theta));
  for (std::size_t k = c_.size(); k-- > dn;) {
    if (rem.c_[k].is_zero()) continue;
    Poly qc = rem.c_[k].scaled(lead_inv);
    const std::size_t base = k - dn;
    for (std::size_t i = 0; i < dn; ++i) {
      if (!d.coeff(i).is_zero()) rem.c_[base + i] -= qc.scaled(d.coeff(i));
    }
    rem.c_[k] = Poly(f, Var::theta);
    quo.c_[base] = std::move(qc);
  }
  rem.trim();
  if (!rem.is_zero()) throw MathError("inexact division of bivariate polynomial by " + d.str());
  quo.trim();
  return quo;
}

Poly BiPoly::eval_t_at_theta() const {
  if (c_.empty()) return field_ ? Poly(*field_, Var::theta) : Poly();
  std::size_t len = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) len = std::max(len, c_[i].size() + i);
  std::vector<Fq> out(len, Fq{});
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const auto& cc = c_[i].coeffs();
    for (std::size_t j = 0; j < cc.size(); ++j) out[i + j] = field_->add(out[i + j], cc[j]);
  }
  return Poly(*field_, std::move(out), Var::theta);
}

Poly BiPoly::theta_coeff(std::size_t j) const {
  std::vector<Fq> out(c_.size(), Fq{});
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i].coeff(j);
  return Poly(*field_, std::move(out), Var::t);
}

std::vector<Poly> BiPoly::to_falling() const {
  // Taylor shift f(u + θ) by Horner; u stands for t − θ.
  if (c_.empty()) return {};
  const FiniteField& f = *field_;
  std::vector<Poly> res;
  for (std::size_t i = c_.size(); i-- > 0;) {
    // res <- res * (u + θ) + c_i
    res.emplace_back(f, Var::theta);
    for (std::size_t k = res.size() - 1; k > 0; --k) res[k] = res[k - 1] + res[k].shifted(1);
    res[0] = res[0].shifted(1) + c_[i];
  }
  while (!res.empty() && res.back().is_zero()) res.pop_back();
  return res;
}

BiPoly BiPoly::from_falling(const FiniteField& field, const std::vector<Poly>& c) {
  // Horner in (t − θ).
  std::vector<Poly> res;
  for (std::size_t i = c.size(); i-- > 0;) {
    res.emplace_back(field, Var::theta);
    for (std::size_t k = res.size() - 1; k > 0; --k) res[k] = res[k - 1] - res[k].shifted(1);
    res[0] = c[i].renamed(Var::theta) - res[0].shifted(1);
  }
  return BiPoly(field, std::move(res));
}

std::string BiPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool bare = c_[i].is_one() && i > 0;
    if (!bare) os << '(' << c_[i].str() << ')';
    if (i > 0) {
      if (!bare) os << '*';
      os << 't';
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

}  // namespace dzv

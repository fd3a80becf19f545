#include "dzv/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dzv {

namespace {

// Below this many stored coefficients, inversion uses the direct recurrence.
constexpr std::size_t kNewtonMin = 64;

std::int64_t clamp_prec(std::int64_t p) { return p >= LaurentSeries::kExact / 2 ? LaurentSeries::kExact : p; }

}  // namespace

LaurentSeries::LaurentSeries(const FiniteField& f, std::int64_t prec) : field_(&f), val_(prec), prec_(prec) {}

LaurentSeries::LaurentSeries(const FiniteField& f, std::int64_t val, std::vector<Fq> coeffs, std::int64_t prec)
    : field_(&f), val_(val), prec_(clamp_prec(prec)), c_(std::move(coeffs)) {
  normalize();
}

void LaurentSeries::normalize() {
  if (val_ < prec_ && static_cast<std::int64_t>(c_.size()) > prec_ - val_) {
    c_.resize(static_cast<std::size_t>(prec_ - val_));
  }
  if (val_ >= prec_) c_.clear();
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<std::int64_t>(lead);
  }
  if (c_.empty()) val_ = prec_;
}

LaurentSeries LaurentSeries::from_poly(const Poly& p) {
  LaurentSeries r;
  r.field_ = p.field();
  r.prec_ = kExact;
  if (p.is_zero()) {
    r.val_ = kExact;
    return r;
  }
  r.c_.assign(p.coeffs().rbegin(), p.coeffs().rend());
  r.val_ = -p.degree().value();
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::from_ratfunc(const RatFunc& r, std::int64_t prec) {
  const LaurentSeries num = from_poly(r.num());
  if (num.is_zero()) return LaurentSeries(*r.den().field(), prec);
  const LaurentSeries den = from_poly(r.den());
  // val(num/den) = num.val - den.val; keep prec - that many coefficients.
  const std::int64_t v = num.val_ - den.val_;
  const std::int64_t rel = std::max<std::int64_t>(prec - v, 0);
  return (num * den.inv(rel)).truncated(prec);
}

Fq LaurentSeries::coeff(std::int64_t e) const {
  if (e >= prec_) throw std::out_of_range("Laurent coefficient beyond known precision");
  if (e < val_) return Fq{};
  const auto i = static_cast<std::size_t>(e - val_);
  return i < c_.size() ? c_[i] : Fq{};
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& c : r.c_) c = field_->neg(c);
  return r;
}

namespace {

LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
  const FiniteField* f = a.field() ? a.field() : b.field();
  const std::int64_t prec = std::min(a.precision(), b.precision());
  if (a.is_zero() && b.is_zero()) return LaurentSeries(*f, prec);
  const std::int64_t lo = std::min(a.valuation(), b.valuation());
  auto end = [](const LaurentSeries& x) { return x.valuation() + static_cast<std::int64_t>(x.coeffs().size()); };
  const std::int64_t hi = std::min(prec, std::max(a.is_zero() ? lo : end(a), b.is_zero() ? lo : end(b)));
  if (hi <= lo) return LaurentSeries(*f, prec);
  std::vector<Fq> out(static_cast<std::size_t>(hi - lo), Fq{});
  auto accumulate = [&](const LaurentSeries& x, bool neg) {
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
      const std::int64_t e = x.valuation() + static_cast<std::int64_t>(i);
      if (e >= hi) break;
      auto& slot = out[static_cast<std::size_t>(e - lo)];
      slot = neg ? f->sub(slot, x.coeffs()[i]) : f->add(slot, x.coeffs()[i]);
    }
  };
  accumulate(a, false);
  accumulate(b, subtract);
  return LaurentSeries(*f, lo, std::move(out), prec);
}

}  // namespace

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, false); }
LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, true); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  const FiniteField* f = a.field_ ? a.field_ : b.field_;
  std::int64_t prec;
  if (a.is_exact() && b.is_exact()) {
    prec = LaurentSeries::kExact;
  } else if (a.is_exact()) {
    prec = a.is_zero() ? LaurentSeries::kExact : a.val_ + b.prec_;
  } else if (b.is_exact()) {
    prec = b.is_zero() ? LaurentSeries::kExact : b.val_ + a.prec_;
  } else {
    prec = std::min(a.val_ + b.prec_, b.val_ + a.prec_);
  }
  if (a.is_zero() || b.is_zero()) return LaurentSeries(*f, clamp_prec(prec));
  const std::int64_t val = a.val_ + b.val_;
  std::vector<Fq> out;
  const std::size_t full = a.c_.size() + b.c_.size() - 1;
  const std::size_t limit =
      prec >= LaurentSeries::kExact ? full : static_cast<std::size_t>(std::max<std::int64_t>(prec - val, 0));
  kernel::multiply_low(*f, a.c_, b.c_, std::min(limit, full), out);
  return LaurentSeries(*f, val, std::move(out), prec);
}

LaurentSeries LaurentSeries::scaled(Fq c) const {
  if (c.is_zero()) return LaurentSeries(*field_, prec_);
  LaurentSeries r = *this;
  for (auto& x : r.c_) x = field_->mul(x, c);
  return r;
}

LaurentSeries LaurentSeries::mul_theta_power(std::int64_t k) const {
  LaurentSeries r = *this;
  r.val_ -= k;
  if (!is_exact()) r.prec_ -= k;
  if (r.c_.empty()) r.val_ = r.prec_;
  return r;
}

LaurentSeries LaurentSeries::inv(std::int64_t rel_prec) const {
  if (is_zero()) throw std::domain_error("inverse of a Laurent series that is zero to precision");
  std::int64_t r;
  if (is_exact()) {
    if (rel_prec < 0) throw std::invalid_argument("inverse of an exact series needs a target precision");
    r = rel_prec;
  } else {
    r = prec_ - val_;
    if (rel_prec >= 0) r = std::min(r, rel_prec);
  }
  const FiniteField& f = *field_;
  const auto n = static_cast<std::size_t>(r);
  std::vector<Fq> b;
  const Fq a0_inv = f.inv(c_[0]);
  if (c_.size() < kNewtonMin) {
    b.assign(n, Fq{});
    for (std::size_t k = 0; k < n; ++k) {
      Fq s = k == 0 ? f.one() : Fq{};
      const std::size_t top = std::min(k, c_.size() - 1);
      for (std::size_t i = 1; i <= top; ++i) s = f.sub(s, f.mul(c_[i], b[k - i]));
      b[k] = f.mul(s, a0_inv);
    }
  } else if (n > 0) {
    b.assign(1, a0_inv);
    std::size_t have = 1;
    std::vector<Fq> ab;
    std::vector<Fq> corr;
    while (have < n) {
      const std::size_t want = std::min(2 * have, n);
      kernel::multiply_low(f, c_, b, want, ab);
      ab.resize(want, Fq{});
      // e = 1 - a*b, which vanishes below `have`
      for (auto& x : ab) x = f.neg(x);
      ab[0] = f.add(ab[0], f.one());
      kernel::multiply_low(f, b, ab, want, corr);
      b.resize(want, Fq{});
      for (std::size_t i = 0; i < std::min(corr.size(), want); ++i) b[i] = f.add(b[i], corr[i]);
      have = want;
    }
  }
  return LaurentSeries(f, -val_, std::move(b), -val_ + r);
}

LaurentSeries LaurentSeries::truncated(std::int64_t prec) const {
  if (prec >= prec_) return *this;
  LaurentSeries r = *this;
  r.prec_ = prec;
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::pow(std::uint64_t k) const {
  LaurentSeries result = from_poly(Poly::constant(*field_, field_->one(), Var::theta));
  LaurentSeries base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

std::string LaurentSeries::str(std::size_t max_terms) const {
  std::ostringstream os;
  std::size_t shown = 0;
  for (std::size_t i = 0; i < c_.size() && shown < max_terms; ++i) {
    if (c_[i].is_zero()) continue;
    if (shown) os << " + ";
    const std::int64_t e = val_ + static_cast<std::int64_t>(i);
    if (c_[i].value != 1 || e == 0) os << c_[i].value;
    if (e != 0) {
      if (c_[i].value != 1) os << '*';
      os << "θ^" << -e;
    }
    ++shown;
  }
  if (!shown) os << '0';
  if (!is_exact()) os << " + O(θ^" << -prec_ << ')';
  return os.str();
}

}  // namespace dzv

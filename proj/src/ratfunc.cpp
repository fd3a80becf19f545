#include "dzv/ratfunc.hpp"

#include <stdexcept>

namespace dzv {

RatFunc::RatFunc(const Poly& num) : num_(num) {
  if (num.field() == nullptr) throw std::invalid_argument("rational function needs a field");
  den_ = Poly::constant(*num.field(), num.field()->one(), num.var());
}

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  const FiniteField& f = *den_.field();
  if (num_.is_zero()) {
    num_ = Poly(f, den_.var());
    den_ = Poly::constant(f, f.one(), den_.var());
    return;
  }
  if (!den_.is_constant()) {
    Poly g = Poly::gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
  }
  const Fq lc = den_.lead();
  if (lc.value != 1) {
    const Fq li = f.inv(lc);
    num_ = num_.scaled(li);
    den_ = den_.scaled(li);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }

std::string RatFunc::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace dzv

#pragma once

#include <string>

#include "dzv/poly.hpp"

namespace dzv {

/// Reduced fraction num/den over F_q, den monic and nonzero. Serves as both
/// F_q(t) (solver scalars) and F_q(θ) (Euler ratios, Chen ranks).
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(const Poly& num);
  RatFunc(const Poly& num, const Poly& den);

  static RatFunc zero(const FiniteField& f, Var v) { return RatFunc(Poly(f, v)); }
  static RatFunc one(const FiniteField& f, Var v) { return RatFunc(Poly::constant(f, f.one(), v)); }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }

  RatFunc operator-() const;
  RatFunc inv() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str() const;

 private:
  void normalize();

  Poly num_;
  Poly den_;
};

}  // namespace dzv

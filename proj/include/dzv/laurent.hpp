#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dzv/poly.hpp"
#include "dzv/ratfunc.hpp"

namespace dzv {

/// Truncated element of F_q((1/θ)), written in u = 1/θ:
///   x = Σ_{e ≥ val} c_e u^e + O(u^prec).
/// Coefficients of u^e are known for every e < prec. When the series is
/// nonzero to precision, the first stored coefficient is nonzero and val is
/// the true valuation; otherwise the coefficient list is empty and
/// val == prec. Exact values (finite sums of powers of θ) carry
/// prec == kExact and any coefficient past the stored ones is zero.
class LaurentSeries {
 public:
  static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

  LaurentSeries() = default;
  /// Zero, known to absolute precision `prec`.
  LaurentSeries(const FiniteField& f, std::int64_t prec);
  /// Coefficients of u^val, u^{val+1}, ...; precision absolute.
  LaurentSeries(const FiniteField& f, std::int64_t val, std::vector<Fq> coeffs, std::int64_t prec);

  /// Exact image of a polynomial in θ.
  static LaurentSeries from_poly(const Poly& p);
  /// Expansion of a rational function in θ to absolute precision `prec`.
  static LaurentSeries from_ratfunc(const RatFunc& r, std::int64_t prec);

  const FiniteField* field() const noexcept { return field_; }
  std::int64_t valuation() const noexcept { return val_; }
  std::int64_t precision() const noexcept { return prec_; }
  bool is_exact() const noexcept { return prec_ >= kExact; }
  /// True when every coefficient below the precision is zero.
  bool is_zero() const noexcept { return c_.empty(); }
  /// Coefficient of u^e; e must be below the precision.
  Fq coeff(std::int64_t e) const;
  const std::vector<Fq>& coeffs() const noexcept { return c_; }

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

  LaurentSeries scaled(Fq c) const;
  /// Multiply by θ^k (k may be negative).
  LaurentSeries mul_theta_power(std::int64_t k) const;
  /// Multiplicative inverse. Exact inputs are expanded to `rel_prec`
  /// coefficients; inexact ones keep at most their own relative precision
  /// and at most `rel_prec` when it is nonnegative. Throws std::domain_error
  /// when the series is zero to precision.
  LaurentSeries inv(std::int64_t rel_prec = -1) const;
  /// Forget everything at and beyond absolute precision `prec`.
  LaurentSeries truncated(std::int64_t prec) const;
  /// k-th power by repeated squaring.
  LaurentSeries pow(std::uint64_t k) const;

  std::string str(std::size_t max_terms = 8) const;

 private:
  void normalize();

  const FiniteField* field_ = nullptr;
  std::int64_t val_ = kExact;
  std::int64_t prec_ = kExact;
  std::vector<Fq> c_;
};

}  // namespace dzv

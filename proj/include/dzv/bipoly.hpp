#pragma once

#include <string>
#include <vector>

#include "dzv/poly.hpp"

namespace dzv {

/// Element of F_q[θ][t], stored t-major: coeff(i) is the F_q[θ] coefficient
/// of t^i. No trailing zero t-coefficients.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(const FiniteField& field) : field_(&field) {}
  BiPoly(const FiniteField& field, std::vector<Poly> coeffs);

  /// Embeds a polynomial in t (F_q coefficients).
  static BiPoly from_t(const Poly& a);
  /// Embeds a polynomial in θ as a t-constant.
  static BiPoly from_theta(const Poly& c);
  static BiPoly one(const FiniteField& field);
  /// t − θ.
  static BiPoly t_minus_theta(const FiniteField& field);

  const FiniteField* field() const noexcept { return field_; }
  bool is_zero() const noexcept { return c_.empty(); }
  Degree deg_t() const noexcept { return c_.empty() ? Degree::neg_inf() : Degree(static_cast<std::int64_t>(c_.size()) - 1); }
  /// Largest θ-degree of any coefficient.
  Degree deg_theta() const noexcept;
  std::size_t size() const noexcept { return c_.size(); }
  const Poly& coeff(std::size_t i) const noexcept;
  const std::vector<Poly>& coeffs() const noexcept { return c_; }

  BiPoly operator-() const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

  BiPoly mul_theta(const Poly& c) const;
  BiPoly mul_t(const Poly& a) const;
  BiPoly scaled(Fq c) const;
  /// Multiply by t^k.
  BiPoly shifted_t(std::size_t k) const;
  BiPoly pow(std::uint64_t k) const;

  /// The m-fold Frobenius twist: θ^j -> θ^{j q^m} in every coefficient.
  BiPoly twist(unsigned m) const;

  /// Exact division by a polynomial in t; a remainder throws MathError.
  BiPoly exact_div_t(const Poly& d) const;

  /// Substitute t = θ.
  Poly eval_t_at_theta() const;

  /// Coefficient of θ^j as a polynomial in t.
  Poly theta_coeff(std::size_t j) const;

  /// c_k with f = Σ_k c_k (t−θ)^k.
  std::vector<Poly> to_falling() const;
  static BiPoly from_falling(const FiniteField& field, const std::vector<Poly>& c);

  friend bool operator==(const BiPoly& a, const BiPoly& b) noexcept { return a.c_ == b.c_; }

  std::string str() const;

 private:
  void trim() noexcept;
  const FiniteField* any_field(const BiPoly& o) const noexcept { return field_ ? field_ : o.field_; }

  const FiniteField* field_ = nullptr;
  std::vector<Poly> c_;
};

}  // namespace dzv

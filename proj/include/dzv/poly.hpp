#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dzv/field.hpp"

namespace dzv {

/// Name of the polynomial variable. Only metadata: it keeps t- and
/// θ-polynomials from being mixed by accident and drives printing.
enum class Var : std::uint8_t { t, theta };

const char* var_name(Var v) noexcept;

/// Degree of a polynomial. The zero polynomial has the distinct degree −∞,
/// which compares below every integer and absorbs addition.
class Degree {
 public:
  constexpr Degree() noexcept = default;
  constexpr Degree(std::int64_t v) noexcept : v_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Degree neg_inf() noexcept { return Degree(kNegInf); }

  constexpr bool is_neg_inf() const noexcept { return v_ == kNegInf; }
  /// Integer value; only meaningful when !is_neg_inf().
  constexpr std::int64_t value() const noexcept { return v_; }
  /// Integer value, or `fallback` for −∞.
  constexpr std::int64_t value_or(std::int64_t fallback) const noexcept { return is_neg_inf() ? fallback : v_; }

  friend constexpr Degree operator+(Degree a, Degree b) noexcept {
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
    return Degree(a.v_ + b.v_);
  }
  friend constexpr bool operator==(Degree, Degree) noexcept = default;
  friend constexpr auto operator<=>(Degree, Degree) noexcept = default;

  std::string str() const;

 private:
  static constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
  std::int64_t v_ = kNegInf;
};

/// Dense univariate polynomial over F_q, no trailing zero coefficients.
///
/// A default-constructed Poly is zero and has no field attached; binary
/// operations take the field from whichever operand carries one.
class Poly {
 public:
  Poly() = default;
  Poly(const FiniteField& field, Var var = Var::t) : field_(&field), var_(var) {}
  Poly(const FiniteField& field, std::vector<Fq> coeffs, Var var = Var::t);

  static Poly constant(const FiniteField& field, Fq c, Var var = Var::t);
  static Poly monomial(const FiniteField& field, Fq c, std::size_t k, Var var = Var::t);
  /// The variable itself.
  static Poly x(const FiniteField& field, Var var = Var::t) { return monomial(field, field.one(), 1, var); }
  /// Coefficients given as small integers mapped into the prime subfield.
  static Poly from_ints(const FiniteField& field, std::initializer_list<std::int64_t> c, Var var = Var::t);

  const FiniteField* field() const noexcept { return field_; }
  Var var() const noexcept { return var_; }

  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0].value == 1; }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  Degree degree() const noexcept { return c_.empty() ? Degree::neg_inf() : Degree(static_cast<std::int64_t>(c_.size()) - 1); }
  /// Number of stored coefficients (degree + 1, or 0 for zero).
  std::size_t size() const noexcept { return c_.size(); }
  Fq coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : Fq{}; }
  Fq lead() const noexcept { return c_.empty() ? Fq{} : c_.back(); }
  const std::vector<Fq>& coeffs() const noexcept { return c_; }
  /// Count of nonzero coefficients.
  std::size_t weight() const noexcept;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  Poly scaled(Fq c) const;
  /// Multiply by x^k.
  Poly shifted(std::size_t k) const;
  /// Coefficients of x^lo ... x^{hi-1}, shifted down to start at x^0.
  Poly slice(std::size_t lo, std::size_t hi) const;

  /// Euclidean division; throws std::domain_error on a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }
  /// Quotient of an exact division; a nonzero remainder throws MathError.
  Poly exact_div(const Poly& d) const;

  static Poly gcd(Poly a, Poly b);
  Poly monic() const;
  Poly pow(std::uint64_t k) const;
  Fq eval(Fq x) const noexcept;

  /// x^j -> x^{j q^m}; equals the q^m-th power since F_q is Frobenius-fixed.
  Poly frobenius(unsigned m) const;
  /// Same coefficients, different variable name.
  Poly renamed(Var v) const;

  friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.c_ == b.c_; }

  std::string str() const;

 private:
  void trim() noexcept;
  const FiniteField* any_field(const Poly& o) const noexcept { return field_ ? field_ : o.field_; }

  const FiniteField* field_ = nullptr;
  Var var_ = Var::t;
  std::vector<Fq> c_;
};

namespace kernel {

/// out = a * b, dense. Uses Karatsuba above an internal size threshold.
void multiply(const FiniteField& f, std::span<const Fq> a, std::span<const Fq> b, std::vector<Fq>& out);

/// Coefficients of a*b with index < limit only (truncated product).
void multiply_low(const FiniteField& f, std::span<const Fq> a, std::span<const Fq> b, std::size_t limit,
                  std::vector<Fq>& out);

}  // namespace kernel

}  // namespace dzv

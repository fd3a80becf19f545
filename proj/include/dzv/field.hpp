#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dzv {

/// Element of F_q, encoded as the integer sum c_i p^i of its coordinates over
/// F_p (c_i is the coefficient of x^i modulo the field's defining polynomial).
/// For prime fields the encoding is the residue itself.
struct Fq {
  std::uint32_t value = 0;

  constexpr bool is_zero() const noexcept { return value == 0; }
  friend constexpr bool operator==(Fq, Fq) noexcept = default;
  friend constexpr auto operator<=>(Fq, Fq) noexcept = default;
};

/// The finite field F_q, q = p^e <= 2^16. Immutable after construction; all
/// arithmetic goes through precomputed log/antilog tables.
///
/// For e > 1 the defining polynomial is the monic irreducible of degree e with
/// the fewest nonzero coefficients, ties broken by the lexicographically
/// smallest coefficient tuple (c_0, ..., c_{e-1}).
class FiniteField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  FiniteField(std::uint32_t p, std::uint32_t e = 1);

  /// Field with q elements; q must be a prime power.
  static FiniteField of_order(std::uint32_t q);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t e() const noexcept { return e_; }
  std::uint32_t q() const noexcept { return q_; }

  /// Defining polynomial, coefficients low to high, monic of degree e.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Fq zero() const noexcept { return Fq{0}; }
  Fq one() const noexcept { return Fq{1}; }

  /// Image of an integer in the prime subfield.
  Fq from_int(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Fq{static_cast<std::uint32_t>(r)};
  }

  Fq add(Fq a, Fq b) const noexcept {
    if (e_ == 1) {
      std::uint32_t s = a.value + b.value;
      return Fq{s >= p_ ? s - p_ : s};
    }
    if (p_ == 2) return Fq{a.value ^ b.value};
    return add_digits(a, b);
  }

  Fq neg(Fq a) const noexcept {
    if (a.value == 0 || p_ == 2) return a;
    if (e_ == 1) return Fq{p_ - a.value};
    return neg_digits(a);
  }

  Fq sub(Fq a, Fq b) const noexcept { return add(a, neg(b)); }

  Fq mul(Fq a, Fq b) const noexcept {
    if (a.value == 0 || b.value == 0) return Fq{0};
    return Fq{exp_[log_[a.value] + log_[b.value]]};
  }

  /// Throws std::domain_error on zero.
  Fq inv(Fq a) const;
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
  Fq pow(Fq a, std::uint64_t k) const noexcept;

  std::vector<std::uint32_t> coords(Fq a) const;
  Fq from_coords(std::span<const std::uint32_t> c) const;

  /// A fixed generator of the multiplicative group.
  Fq primitive() const noexcept { return Fq{exp_[1]}; }

  std::string describe() const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) noexcept {
    return a.p_ == b.p_ && a.e_ == b.e_;
  }

 private:
  Fq add_digits(Fq a, Fq b) const noexcept;
  Fq neg_digits(Fq a) const noexcept;

  std::uint32_t p_;
  std::uint32_t e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;  // length 2(q-1), so log sums need no reduction
  std::vector<std::uint32_t> log_;
};

/// True iff n is prime (trial division; used for field and CLI validation).
bool is_prime(std::uint64_t n) noexcept;

/// Binomial coefficient C(n, k) mod p via base-p digits (Lucas).
std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p);

}  // namespace dzv

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "dzv/carlitz.hpp"
#include "dzv/laurent.hpp"
#include "dzv/ratfunc.hpp"

namespace dzv {

/// Truncated value of a single or double zeta value.
struct ZetaEvaluation {
  std::vector<unsigned> index;
  unsigned d_max = 0;
  LaurentSeries value;
  /// Absolute precision guaranteed for the full (untruncated) series.
  std::int64_t precision = 0;
};

/// coeff(θ) · ζ_A(s1, s2), or coeff(θ) · ζ_A(s1) when s2 == 0.
struct ZetaTerm {
  unsigned s1 = 0;
  unsigned s2 = 0;
  Poly coeff;
};

enum class VerifyStatus { pass, fail, inconclusive };

const char* to_string(VerifyStatus s) noexcept;

struct VerifyOutcome {
  VerifyStatus status = VerifyStatus::inconclusive;
  /// Coefficient of π̃^n (A-even weights, on success).
  std::optional<Poly> c0;
  /// Number of vanishing coefficients checked beyond those that determine c0.
  std::int64_t margin = 0;
  std::int64_t precision = 0;
  std::string detail;
};

/// Lower bound for the 1/θ-valuation of S_d(k), from the vanishing of
/// Σ_{b ∈ F_q} b^j unless (q − 1) | j > 0 and Lucas' theorem on the
/// multinomial coefficients:
///   dk + Σ_{r=1}^{d} (d − r + 1) · max(q − 1, p^{⌊(r−1)/(p−1)⌋}).
std::int64_t power_sum_valuation_bound(std::uint32_t q, std::uint32_t p, unsigned d, unsigned k);

/// N/D with deg N ≤ deg_n and deg D ≤ deg_d (D monic) matching x, after at
/// least `margin` further vanishing coefficients. nullopt otherwise.
std::optional<RatFunc> rational_reconstruct(const LaurentSeries& x, unsigned deg_n, unsigned deg_d,
                                            unsigned margin = 10);

/// Analytic side over F_q((1/θ)): power sums, zeta values, powers of π̃.
/// Power sums are memoized; the object may be shared between threads.
class NumericOracle {
 public:
  explicit NumericOracle(const CarlitzContext& ctx, std::uint64_t max_terms = 1u << 14);

  const CarlitzContext& context() const noexcept { return ctx_; }

  /// S_d(k) = Σ_{a monic, deg a = d} a^{−k} to absolute precision `prec`.
  LaurentSeries power_sum_series(unsigned d, unsigned k, std::int64_t prec) const;
  /// S_d(k) exactly. Throws std::out_of_range when q^d exceeds the
  /// enumeration bound.
  RatFunc power_sum(unsigned d, unsigned k) const;

  /// Σ_{i ≤ d_max} S_i(n), precision min(cap, bound on the tail).
  ZetaEvaluation zeta_single(unsigned n, unsigned d_max, std::int64_t cap = -1) const;
  /// Σ_{d_max ≥ i1 > i2 ≥ 0} S_{i1}(s1) S_{i2}(s2). Without a cap the
  /// precision is s1 (d_max + 1).
  ZetaEvaluation zeta_double(unsigned s1, unsigned s2, unsigned d_max, std::int64_t cap = -1) const;

  /// π̃^n for (q − 1) | n, to absolute precision `prec`.
  LaurentSeries pi_power(unsigned n, std::int64_t prec) const;

  /// Σ coeff · ζ with every zeta value computed so that the sum has
  /// absolute precision at least `prec` where d_max allows.
  LaurentSeries evaluate(const std::vector<ZetaTerm>& terms, unsigned d_max, std::int64_t prec) const;

  /// Checks the zeta relation induced by a point relation of weight n: for
  /// A-even n, L/π̃^n must reconstruct to a polynomial c0; for A-odd n,
  /// L must vanish.
  VerifyOutcome verify(const std::vector<ZetaTerm>& terms, unsigned n, unsigned d_max, unsigned margin = 10) const;

  /// Fixes the sign in ζ_A(m) = ±γ_m π̃^m by comparing at m = q − 1 and
  /// checks it at the next two A-even weights. Stores it in the context.
  int calibrate_euler_sign(unsigned d_max = 8) const;

 private:
  const CarlitzContext& ctx_;
  std::uint64_t max_terms_;
  mutable std::shared_mutex mu_;
  mutable std::map<std::pair<unsigned, unsigned>, LaurentSeries> sums_;
};

/// Terms of the zeta relation induced by Σ [a_i]_n(P_i) = 0, where each
/// label (s1, s2) names Ξ_{(s1,s2)} or, with s2 == 0, the point v_{s1}:
///   v_n      -> a(θ) Γ_n ζ_A(n)
///   Ξ_(s1,s2) -> a(θ) α_s(θ) Γ_{s1} Γ_{s2} ζ_A(s1, s2).
std::vector<ZetaTerm> induced_terms(const CarlitzContext& ctx,
                                    const std::vector<std::pair<unsigned, unsigned>>& labels,
                                    const std::vector<Poly>& a);

}  // namespace dzv

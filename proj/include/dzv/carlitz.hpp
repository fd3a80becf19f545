#pragma once

#include <atomic>
#include <deque>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "dzv/bipoly.hpp"
#include "dzv/field.hpp"
#include "dzv/poly.hpp"
#include "dzv/ratfunc.hpp"

namespace dzv {

/// Point of the n-th tensor power of the Carlitz module over A = F_q[θ]:
/// a column (z_1, ..., z_n) of θ-polynomials.
using TensorPoint = std::vector<Poly>;

/// Largest θ-degree among the entries; −∞ for the zero point.
Degree sup_degree(const TensorPoint& z);
bool is_zero_point(const TensorPoint& z);

/// Owns F_q and memoizes the Carlitz quantities over it. Memo tables only
/// grow; lookups take a shared lock and fills an exclusive one, so a single
/// context can be shared by worker threads. Not copyable or movable, since
/// every polynomial it hands out points at its field.
class CarlitzContext {
 public:
  explicit CarlitzContext(std::uint32_t p, std::uint32_t e = 1);
  static std::unique_ptr<CarlitzContext> of_order(std::uint32_t q);

  CarlitzContext(const CarlitzContext&) = delete;
  CarlitzContext& operator=(const CarlitzContext&) = delete;

  const FiniteField& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_.q(); }
  std::uint32_t p() const noexcept { return field_.p(); }

  /// D_0 = 1, D_i = (θ^{q^i} − θ) D_{i−1}^q.
  const Poly& D(unsigned i) const;
  /// D_i with θ renamed to t.
  Poly D_t(unsigned i) const { return D(i).renamed(Var::t); }
  /// L_0 = 1, L_i = (θ − θ^{q^i}) L_{i−1}.
  const Poly& L(unsigned i) const;
  /// Carlitz factorial Γ_m = Π D_i^{n_i}, m − 1 = Σ n_i q^i; m ≥ 1.
  Poly gamma(std::uint64_t m) const;
  Poly gamma_t(std::uint64_t m) const { return gamma(m).renamed(Var::t); }
  /// G_i(θ) = Π_{j=1}^{i} (t^{q^i} − θ^{q^j}); G_0 = 1.
  BiPoly g_poly(unsigned i) const;

  /// Anderson–Thakur polynomial H_n ∈ F_q[θ][t].
  const BiPoly& anderson_thakur(std::size_t n) const;
  /// Number of H_n currently memoized (H_0 ... H_{count−1}).
  std::size_t anderson_thakur_count() const;
  /// Installs a precomputed H_n (e.g. from a cache). Only the next index in
  /// sequence is accepted; returns false otherwise.
  bool install_anderson_thakur(std::size_t n, BiPoly h) const;

  /// α = (t^{q^h} − t)^{p^ℓ} for s2 = p^ℓ n_1 (q^h − 1), h maximal, p ∤ n_1.
  /// Requires (q − 1) | s2.
  Poly alpha_for(std::uint64_t s2) const;

  /// [a]_n(z) by Horner over the single step
  ///   (z_1, ..., z_n) -> (θz_1 + z_2, ..., θz_{n−1} + z_n, θz_n + z_1^q).
  TensorPoint carlitz_action(const Poly& a, const TensorPoint& z) const;
  TensorPoint t_step(const TensorPoint& z) const;

  /// Bottom row of the i-th coefficient matrix of log_n: entry ℓ − 1 is
  /// (−1)^{n−ℓ} (θ^{q^i} − θ)^{n−ℓ} / L_i^n for ℓ = 1..n.
  std::vector<RatFunc> log_bottom_row(unsigned i, unsigned n) const;

  /// Coefficient of z^m in z / e_C(z) where e_C(z)/z = Σ_i z^{q^i−1}/D_i.
  /// Requires (q − 1) | m.
  RatFunc euler_ratio_raw(std::uint64_t m) const;
  /// ε · euler_ratio_raw(m), where ε = ±1 is the sign fixed by
  /// set_euler_sign. Throws std::logic_error before calibration.
  RatFunc euler_ratio(std::uint64_t m) const;
  void set_euler_sign(int sign) const;
  std::optional<int> euler_sign() const;

 private:
  Poly theta_pow(std::uint64_t k) const { return Poly::monomial(field_, field_.one(), k, Var::theta); }

  FiniteField field_;
  // One lock per table: filling H_n reads D_i, so a shared lock would deadlock.
  mutable std::shared_mutex d_mu_;
  mutable std::shared_mutex l_mu_;
  mutable std::shared_mutex h_mu_;
  mutable std::shared_mutex euler_mu_;
  mutable std::deque<Poly> d_;
  mutable std::deque<Poly> l_;
  mutable std::deque<BiPoly> h_;
  mutable std::vector<RatFunc> euler_;  // coefficients of z/e_C(z)
  mutable std::atomic<int> euler_sign_{0};
};

}  // namespace dzv

#pragma once

#include <cstddef>
#include <vector>

#include "dzv/bipoly.hpp"
#include "dzv/carlitz.hpp"

namespace dzv {

/// Linear system in the unknowns (c_0, ..., c_{ℓ−1}, a_1, ..., a_m) over
/// F_q[t], one row per θ-power of
///   δ (t − θ^q)^n + F (t − θ^q)^n − δ^{(1)} = 0,
/// with δ = Σ c_j θ^j and F = Σ a_i f_i.
struct SiegelSystem {
  unsigned n = 0;
  std::vector<TensorPoint> points;
  std::vector<BiPoly> f;
  std::size_t ell = 0;
  std::vector<std::vector<Poly>> rows;

  std::size_t num_c() const noexcept { return ell; }
  std::size_t num_a() const noexcept { return points.size(); }
  std::size_t num_rows() const noexcept { return rows.size(); }
};

/// ℓ = max(max_i deg_θ f_i + 1, ⌊nq/(q−1)⌋ + 1).
std::size_t siegel_bound(std::uint32_t q, unsigned n, Degree max_deg_f);

SiegelSystem build_system(const CarlitzContext& ctx, const std::vector<TensorPoint>& points, unsigned n);

/// Σ_i [a_i]_n(v_i) = 0, with δ the polynomial witness.
struct Relation {
  std::vector<Poly> a;
  BiPoly delta;
};

struct RelationResult {
  std::size_t rank = 0;
  std::vector<Relation> relations;
  /// Dimension of the δ-only solution space. Expected to be zero.
  std::size_t homogeneous_nullity = 0;
  std::size_t ell = 0;
  std::size_t rows = 0;

  bool anomaly() const noexcept { return homogeneous_nullity != 0; }
};

/// Rank over F_q[t] of the span of the points, plus a basis of the relation
/// module in reduced echelon form (denominators cleared, content removed).
/// Every relation is checked by direct action; a failure throws
/// MathError.
RelationResult relation_rank(const CarlitzContext& ctx, const std::vector<TensorPoint>& points, unsigned n);

/// Σ_i [a_i]_n(v_i) evaluated directly.
TensorPoint apply_relation(const CarlitzContext& ctx, const std::vector<TensorPoint>& points,
                           const std::vector<Poly>& a, unsigned n);

/// Kernel of a matrix over F_q(t) given by polynomial entries, as primitive
/// polynomial vectors: one per free column, with the free column's entry
/// monic and the other free entries zero. Columns are pivoted left to right.
std::vector<std::vector<Poly>> polynomial_kernel(const FiniteField& f, std::vector<std::vector<Poly>> rows,
                                                 std::size_t cols);

/// Rank over F_q(t) of a polynomial matrix.
std::size_t polynomial_rank(const FiniteField& f, std::vector<std::vector<Poly>> rows, std::size_t cols);

}  // namespace dzv

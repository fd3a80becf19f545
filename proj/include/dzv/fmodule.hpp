#pragma once

#include <vector>

#include "dzv/bipoly.hpp"
#include "dzv/carlitz.hpp"

namespace dzv {

/// Block layout of the depth-two module M'_s: basis
///   (t−θ)^{n−1} m_1, ..., m_1, (t−θ)^{s2−1} m_2, ..., m_2,   n = s1 + s2.
struct ModuleShape {
  unsigned s1 = 1;
  unsigned s2 = 1;

  unsigned n() const noexcept { return s1 + s2; }
  unsigned d() const noexcept { return s1 + 2 * s2; }
};

/// g1 m_1 + g2 m_2.
struct ModuleElement {
  BiPoly g1;
  BiPoly g2;
};

/// Coordinates (a_1, ..., a_d) in the block basis of ModuleShape: the unique
/// σ-degree-zero representative of a class modulo (σ − 1).
struct NormalForm {
  ModuleShape shape;
  std::vector<Poly> coords;

  /// First n coordinates (the C^⊗n block).
  TensorPoint first_block() const;
  /// True when the m_2 block vanishes, i.e. the class lies in C^⊗n.
  bool in_tensor_power() const;

  friend bool operator==(const NormalForm& a, const NormalForm& b) {
    return a.shape.s1 == b.shape.s1 && a.shape.s2 == b.shape.s2 && a.coords == b.coords;
  }
};

/// Σ_j z_j (t−θ)^{n−j} in the t-power basis.
BiPoly assoc_poly(const FiniteField& f, const TensorPoint& z);

/// Reduction of g modulo (σ − 1) in the C^⊗n model σ·1 = (t−θ)^n:
/// repeatedly g = Q (t−θ)^n + r  ->  r + Q^{(1)}. Returns (z_1, ..., z_n).
TensorPoint normalize_tensor(const FiniteField& f, const BiPoly& g, unsigned n);

/// Normal form in M'_s. Runs the m_2 rule to exhaustion
///   g2 = Q (t−θ)^{s2} + r  ->  g2 = r + Q^{(1)},  g1 -= Q^{(1)} H_{s1−1},
/// then the m_1 rule (as in normalize_tensor).
NormalForm normalize(const CarlitzContext& ctx, const ModuleElement& x, const ModuleShape& shape);

/// Representative polynomial pair of a normal form.
ModuleElement lift(const FiniteField& f, const NormalForm& v);

/// F_q[t]-action on classes: normalize(a · lift(v)).
NormalForm act(const CarlitzContext& ctx, const Poly& a, const NormalForm& v);

/// v_n: the C^⊗n normal form of H_{n−1}.
TensorPoint special_point_vn(const CarlitzContext& ctx, unsigned n);

/// v_s = normalize(H_{s2−1} m_2 − H_{s1−1} H_{s2−1} m_1).
NormalForm special_point_vs(const CarlitzContext& ctx, unsigned s1, unsigned s2);

/// Ξ_s together with the torsion polynomial that produced it.
struct XiPoint {
  unsigned s1 = 0;
  unsigned s2 = 0;
  Poly alpha;
  TensorPoint xi;

  unsigned n() const noexcept { return s1 + s2; }
};

/// Ξ_s = first block of normalize(α_s · lift(v_s)). Requires (q − 1) | s2.
/// Throws MathError if the m_2 block does not vanish.
XiPoint xi_point(const CarlitzContext& ctx, unsigned s1, unsigned s2);

}  // namespace dzv

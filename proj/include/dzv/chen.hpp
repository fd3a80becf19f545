#pragma once

#include <cstdint>
#include <vector>

#include "dzv/carlitz.hpp"
#include "dzv/ratfunc.hpp"

namespace dzv {

/// Linear relation  pi · π̃^n = Σ_{i+j=n} dz[i−1] · ζ_A(i, j)  coming from a
/// product ζ_A(r) ζ_A(s) of two A-even values.
struct ChenVector {
  unsigned n = 0;
  unsigned r = 0;
  unsigned s = 0;
  /// γ_r γ_s − γ_n.
  RatFunc pi;
  /// F_p coefficients of ζ_A(1, n−1), ..., ζ_A(n−1, 1).
  std::vector<std::uint32_t> dz;
};

/// Requires r ≤ s, both A-even, and a calibrated Euler sign on ctx.
ChenVector chen_vector(const CarlitzContext& ctx, unsigned r, unsigned s);

/// All product relations at A-even weight n, pairs (r, s) with r ≤ s.
std::vector<ChenVector> chen_vectors(const CarlitzContext& ctx, unsigned n);

/// Rank over k = F_q(θ) of the product relations at A-even weight n.
/// Throws std::invalid_argument for A-odd n.
std::size_t fp_linear_count(const CarlitzContext& ctx, unsigned n);

}  // namespace dzv

#pragma once

#include <random>

#include "dzv/bipoly.hpp"
#include "dzv/field.hpp"
#include "dzv/laurent.hpp"
#include "dzv/poly.hpp"

namespace dzv::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0xD2F5u);
  return gen;
}

inline Fq random_elem(const FiniteField& f) {
  return Fq{static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint32_t>(0, f.q() - 1)(rng()))};
}

inline Fq random_nonzero(const FiniteField& f) {
  return Fq{static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint32_t>(1, f.q() - 1)(rng()))};
}

inline Poly random_poly(const FiniteField& f, std::size_t max_deg, Var v = Var::t) {
  std::vector<Fq> c(std::uniform_int_distribution<std::size_t>(0, max_deg + 1)(rng()));
  for (auto& x : c) x = random_elem(f);
  return Poly(f, std::move(c), v);
}

inline Poly random_poly_exact(const FiniteField& f, std::size_t deg, Var v = Var::t) {
  std::vector<Fq> c(deg + 1);
  for (auto& x : c) x = random_elem(f);
  c.back() = random_nonzero(f);
  return Poly(f, std::move(c), v);
}

inline BiPoly random_bipoly(const FiniteField& f, std::size_t max_t, std::size_t max_theta) {
  std::vector<Poly> c(std::uniform_int_distribution<std::size_t>(0, max_t + 1)(rng()));
  for (auto& x : c) x = random_poly(f, max_theta, Var::theta);
  return BiPoly(f, std::move(c));
}

inline Poly naive_mul(const Poly& a, const Poly& b) {
  const FiniteField& f = *(a.field() ? a.field() : b.field());
  if (a.is_zero() || b.is_zero()) return Poly(f, a.var());
  std::vector<Fq> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a.coeff(i), b.coeff(j)));
  }
  return Poly(f, std::move(r), a.var());
}

}  // namespace dzv::testing

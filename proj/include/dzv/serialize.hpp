#pragma once

#include <json.hpp>

#include "dzv/bipoly.hpp"
#include "dzv/carlitz.hpp"
#include "dzv/poly.hpp"

namespace dzv {

/// A polynomial is a JSON array of coefficients, lowest degree first; each
/// coefficient is the array of its e coordinates over F_p (integers 0..p−1).
///   θ^2 + 1 over F_3  ->  [[1], [0], [1]]
nlohmann::json to_json(const FiniteField& f, const Poly& p);
Poly poly_from_json(const FiniteField& f, const nlohmann::json& j, Var var);

/// Point of C^⊗n: array of polynomials in θ.
nlohmann::json to_json(const FiniteField& f, const TensorPoint& z);
TensorPoint point_from_json(const FiniteField& f, const nlohmann::json& j);

/// Element of F_q[θ][t]: array of θ-polynomials, t^0 first.
nlohmann::json to_json(const FiniteField& f, const BiPoly& b);
BiPoly bipoly_from_json(const FiniteField& f, const nlohmann::json& j);

}  // namespace dzv

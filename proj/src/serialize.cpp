#include "dzv/serialize.hpp"

#include "dzv/errors.hpp"

namespace dzv {

nlohmann::json to_json(const FiniteField& f, const Poly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const Fq c : p.coeffs()) out.push_back(f.coords(c));
  return out;
}

Poly poly_from_json(const FiniteField& f, const nlohmann::json& j, Var var) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array");
  std::vector<Fq> c;
  c.reserve(j.size());
  for (const auto& x : j) {
    const auto digits = x.get<std::vector<std::uint32_t>>();
    if (digits.size() != f.e()) throw std::invalid_argument("coefficient has the wrong number of coordinates");
    for (auto d : digits) {
      if (d >= f.p()) throw std::invalid_argument("coordinate out of range");
    }
    c.push_back(f.from_coords(digits));
  }
  return Poly(f, std::move(c), var);
}

nlohmann::json to_json(const FiniteField& f, const TensorPoint& z) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : z) out.push_back(to_json(f, p));
  return out;
}

TensorPoint point_from_json(const FiniteField& f, const nlohmann::json& j) {
  TensorPoint z;
  for (const auto& x : j) z.push_back(poly_from_json(f, x, Var::theta));
  return z;
}

nlohmann::json to_json(const FiniteField& f, const BiPoly& b) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : b.coeffs()) out.push_back(to_json(f, p));
  return out;
}

BiPoly bipoly_from_json(const FiniteField& f, const nlohmann::json& j) {
  std::vector<Poly> c;
  for (const auto& x : j) c.push_back(poly_from_json(f, x, Var::theta));
  return BiPoly(f, std::move(c));
}

}  // namespace dzv

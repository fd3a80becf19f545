#include "doctest.h"
#include "dzv/errors.hpp"
#include "dzv/fmodule.hpp"
#include "support.hpp"

using namespace dzv;
using dzv::testing::random_bipoly;
using dzv::testing::random_poly;

namespace {

Poly th(const FiniteField& f, std::initializer_list<std::int64_t> c) { return Poly::from_ints(f, c, Var::theta); }
Poly tp(const FiniteField& f, std::initializer_list<std::int64_t> c) { return Poly::from_ints(f, c, Var::t); }

bool all_zero(const NormalForm& v) {
  for (const auto& c : v.coords) {
    if (!c.is_zero()) return false;
  }
  return true;
}

NormalForm embed(const FiniteField& f, const TensorPoint& z, ModuleShape shape) {
  NormalForm v{shape, z};
  v.coords.resize(shape.d(), Poly(f, Var::theta));
  return v;
}

TensorPoint random_point(const FiniteField& f, unsigned n, std::size_t deg) {
  TensorPoint z(n);
  for (auto& e : z) e = random_poly(f, deg, Var::theta);
  return z;
}

}  // namespace

TEST_CASE("normal forms: hand-reduced examples in characteristic 2") {
  auto ctx = CarlitzContext::of_order(2);
  const auto& f = ctx->field();
  const ModuleShape s{1, 1};
  const BiPoly one = BiPoly::one(f);
  const NormalForm a = normalize(*ctx, {one, one}, s);
  CHECK(a.coords == std::vector<Poly>{Poly(f, Var::theta), th(f, {1}), th(f, {1})});

  const BiPoly alpha = BiPoly::from_t(tp(f, {0, 1, 1}));
  const NormalForm b = normalize(*ctx, {alpha, alpha}, s);
  CHECK(b.coords == std::vector<Poly>{Poly(f, Var::theta), th(f, {1}), Poly(f, Var::theta)});
  CHECK(b.in_tensor_power());
}

TEST_CASE("special points v_n") {
  auto c2 = CarlitzContext::of_order(2);
  const auto& f2 = c2->field();
  CHECK(special_point_vn(*c2, 1) == TensorPoint{th(f2, {1})});
  CHECK(special_point_vn(*c2, 2) == TensorPoint{Poly(f2, Var::theta), th(f2, {1})});
  for (std::uint32_t q : {3u, 4u, 5u}) {
    auto ctx = CarlitzContext::of_order(q);
    for (unsigned n = 1; n + 1 <= q; ++n) {
      const TensorPoint v = special_point_vn(*ctx, n);
      REQUIRE(v.size() == n);
      for (unsigned i = 0; i + 1 < n; ++i) CHECK(v[i].is_zero());
      CHECK(v.back().is_one());
    }
  }
  // v_n is the normal form of H_{n−1}; check against the generic
  // depth-two engine with an empty second block.
  auto c3 = CarlitzContext::of_order(3);
  for (unsigned n = 2; n <= 9; ++n) {
    const TensorPoint v = special_point_vn(*c3, n);
    const TensorPoint w = normalize(*c3, {c3->anderson_thakur(n - 1), BiPoly(c3->field())}, ModuleShape{n - 1, 1})
                              .first_block();
    CHECK(v == w);
  }
}

TEST_CASE("special points v_s and Xi_s") {
  auto c2 = CarlitzContext::of_order(2);
  const auto& f2 = c2->field();
  const NormalForm vs = special_point_vs(*c2, 1, 1);
  CHECK(vs.coords == std::vector<Poly>{Poly(f2, Var::theta), th(f2, {1}), th(f2, {1})});
  const XiPoint xi = xi_point(*c2, 1, 1);
  CHECK(xi.alpha == tp(f2, {0, 1, 1}));
  CHECK(xi.xi == TensorPoint{Poly(f2, Var::theta), th(f2, {1})});
  CHECK(is_zero_point(c2->carlitz_action(tp(f2, {0, 1, 1}).pow(2), xi.xi)));

  auto c3 = CarlitzContext::of_order(3);
  const auto& f3 = c3->field();
  const NormalForm v12 = special_point_vs(*c3, 1, 2);
  CHECK(v12.coords ==
        std::vector<Poly>{Poly(f3, Var::theta), Poly(f3, Var::theta), th(f3, {-1}), Poly(f3, Var::theta), th(f3, {1})});
  CHECK_NOTHROW(xi_point(*c3, 1, 2));
  CHECK_THROWS_AS(xi_point(*c3, 2, 1), std::invalid_argument);
}

TEST_CASE("Xi_s m_2 block vanishes across small weights") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto ctx = CarlitzContext::of_order(q);
    for (unsigned n = 2; n <= 9; ++n) {
      for (unsigned s2 = q - 1; s2 < n; s2 += q - 1) {
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(s2);
        const XiPoint xi = xi_point(*ctx, n - s2, s2);
        CHECK(xi.xi.size() == n);
      }
    }
  }
}

TEST_CASE("normal-form action agrees with the tensor action") {
  for (std::uint32_t q : {2u, 3u}) {
    auto ctx = CarlitzContext::of_order(q);
    const auto& f = ctx->field();
    for (int it = 0; it < 40; ++it) {
      const unsigned s1 = 1 + it % 3;
      const unsigned s2 = (q - 1) * (1 + (it / 3) % 2);
      const ModuleShape shape{s1, s2};
      const TensorPoint z = random_point(f, shape.n(), 3);
      const Poly a = random_poly(f, 8);
      const NormalForm img = act(*ctx, a, embed(f, z, shape));
      CHECK(img.in_tensor_power());
      CHECK(img.first_block() == ctx->carlitz_action(a, z));
    }
  }
}

TEST_CASE("normal forms: rewrite soundness, linearity, well-definedness") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto ctx = CarlitzContext::of_order(q);
    const auto& f = ctx->field();
    const BiPoly tmt = BiPoly::t_minus_theta(f);
    for (int it = 0; it < 20; ++it) {
      const ModuleShape shape{1 + static_cast<unsigned>(it % 3), 1 + static_cast<unsigned>((it / 3) % 3)};
      const BiPoly b = random_bipoly(f, 4, 3);
      const BiPoly zero(f);
      const BiPoly& h = ctx->anderson_thakur(shape.s1 - 1);

      const NormalForm r1 = normalize(*ctx, {b * tmt.pow(shape.n()) - b.twist(1), zero}, shape);
      CHECK(all_zero(r1));
      const NormalForm r2 = normalize(*ctx, {b.twist(1) * h, b * tmt.pow(shape.s2) - b.twist(1)}, shape);
      CHECK(all_zero(r2));
      CHECK(normalize(*ctx, {b * tmt.pow(shape.n()), zero}, shape) == normalize(*ctx, {b.twist(1), zero}, shape));

      const ModuleElement x{random_bipoly(f, 4, 3), random_bipoly(f, 4, 3)};
      const ModuleElement y{random_bipoly(f, 4, 3), random_bipoly(f, 4, 3)};
      const NormalForm nx = normalize(*ctx, x, shape);
      const NormalForm ny = normalize(*ctx, y, shape);
      const NormalForm nxy = normalize(*ctx, {x.g1 + y.g1, x.g2 + y.g2}, shape);
      for (std::size_t i = 0; i < nxy.coords.size(); ++i) CHECK(nxy.coords[i] == nx.coords[i] + ny.coords[i]);

      const Poly a = random_poly(f, 4);
      const Poly c = random_poly(f, 4);
      CHECK(act(*ctx, a, act(*ctx, c, nx)) == act(*ctx, a * c, nx));
      CHECK(normalize(*ctx, lift(f, nx), shape) == nx);
    }
  }
}

#include "doctest.h"
#include "dzv/carlitz.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace dzv;
using namespace dzv::testing;

namespace {

Poly th(const FiniteField& f, std::initializer_list<std::int64_t> c) { return Poly::from_ints(f, c, Var::theta); }
Poly tp(const FiniteField& f, std::initializer_list<std::int64_t> c) { return Poly::from_ints(f, c, Var::t); }
Poly theta_pow(const FiniteField& f, std::uint64_t k) { return Poly::monomial(f, f.one(), k, Var::theta); }

}  // namespace

TEST_CASE("D, L and the Carlitz factorial") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto ctx = CarlitzContext::of_order(q);
    const auto& f = ctx->field();
    CHECK(ctx->D(0).is_one());
    CHECK(ctx->L(0).is_one());
    std::uint64_t qi = 1;
    for (unsigned i = 1; i <= 4; ++i) {
      qi *= q;
      Poly prod = Poly::constant(f, f.one(), Var::theta);
      std::uint64_t qj = 1;
      for (unsigned j = 0; j < i; ++j, qj *= q) prod *= theta_pow(f, qi) - theta_pow(f, qj);
      CHECK(ctx->D(i) == prod);
      Poly lprod = Poly::constant(f, f.one(), Var::theta);
      std::uint64_t qk = 1;
      for (unsigned j = 1; j <= i; ++j) {
        qk *= q;
        lprod *= theta_pow(f, 1) - theta_pow(f, qk);
      }
      CHECK(ctx->L(i) == lprod);
      CHECK(ctx->gamma(qi + 1) == ctx->D(i));
    }
    CHECK(ctx->gamma(1).is_one());
  }
  auto c2 = CarlitzContext::of_order(2);
  CHECK(c2->gamma(3) == th(c2->field(), {0, 1, 1}));
  auto c3 = CarlitzContext::of_order(3);
  CHECK(c3->gamma(4) == th(c3->field(), {0, -1, 0, 1}));
  CHECK_THROWS_AS(c3->gamma(0), std::invalid_argument);
}

TEST_CASE("G polynomials") {
  auto c2 = CarlitzContext::of_order(2);
  const auto& f2 = c2->field();
  CHECK(c2->g_poly(0) == BiPoly::one(f2));
  CHECK(c2->g_poly(1) == BiPoly(f2, {th(f2, {0, 0, 1}), Poly(f2, Var::theta), th(f2, {1})}));
  auto c3 = CarlitzContext::of_order(3);
  const auto& f3 = c3->field();
  CHECK(c3->g_poly(1) ==
        BiPoly::from_t(Poly::monomial(f3, f3.one(), 3, Var::t)) - BiPoly::from_theta(theta_pow(f3, 3)));
}

TEST_CASE("Anderson-Thakur polynomials: small values") {
  for (std::uint32_t q : {3u, 4u, 5u, 7u}) {
    auto ctx = CarlitzContext::of_order(q);
    for (std::size_t n = 0; n + 2 <= q; ++n) CHECK(ctx->anderson_thakur(n) == BiPoly::one(ctx->field()));
  }
  auto c2 = CarlitzContext::of_order(2);
  const auto& f = c2->field();
  CHECK(c2->anderson_thakur(1) == BiPoly::one(f));
  CHECK(c2->anderson_thakur(2) == BiPoly(f, {th(f, {0, 0, 1}), th(f, {1})}));
}

TEST_CASE("Anderson-Thakur polynomials: H_{n-1}(θ) = Γ_n and series inversion") {
  for (std::uint32_t q : {2u, 3u}) {
    auto ctx = CarlitzContext::of_order(q);
    constexpr std::size_t N = 30;
    for (std::size_t n = 1; n <= N; ++n) CHECK(ctx->anderson_thakur(n - 1).eval_t_at_theta() == ctx->gamma(n));
    const auto b = series_inverse(*ctx, N);
    for (std::size_t n = 0; n < N; ++n) {
      CAPTURE(q);
      CAPTURE(n);
      const TSeriesCoeff h = from_bipoly(ctx->anderson_thakur(n));
      const RatFunc g(ctx->gamma_t(n + 1));
      TSeriesCoeff scaled;
      for (const auto& [j, c] : b[n]) scaled.emplace(j, c * g);
      CHECK(scaled == h);
    }
  }
}

TEST_CASE("alpha for A-even s2") {
  auto c2 = CarlitzContext::of_order(2);
  const auto& f2 = c2->field();
  const Poly t2t = tp(f2, {0, 1, 1});
  CHECK(c2->alpha_for(1) == t2t);
  CHECK(c2->alpha_for(2) == t2t.pow(2));
  CHECK(c2->alpha_for(3) == tp(f2, {0, 1, 0, 0, 1}));
  CHECK(c2->alpha_for(6) == tp(f2, {0, 1, 0, 0, 1}).pow(2));
  CHECK(c2->alpha_for(5) == t2t);
  auto c3 = CarlitzContext::of_order(3);
  const auto& f3 = c3->field();
  CHECK(c3->alpha_for(2) == tp(f3, {0, -1, 0, 1}));
  CHECK(c3->alpha_for(6) == tp(f3, {0, -1, 0, 1}).pow(3));
  CHECK(c3->alpha_for(8) == Poly::monomial(f3, f3.one(), 9, Var::t) - tp(f3, {0, 1}));
  CHECK_THROWS_AS(c3->alpha_for(3), std::invalid_argument);
}

TEST_CASE("Carlitz tensor action") {
  auto c2 = CarlitzContext::of_order(2);
  const auto& f = c2->field();
  const TensorPoint z{Poly(f, Var::theta), th(f, {1})};
  CHECK(c2->carlitz_action(tp(f, {0, 1}), z) == TensorPoint{th(f, {1}), th(f, {0, 1})});
  CHECK(c2->carlitz_action(tp(f, {1}), z) == z);
  CHECK(is_zero_point(c2->carlitz_action(tp(f, {0, 1, 1}).pow(2), z)));

  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto ctx = CarlitzContext::of_order(q);
    const auto& fq = ctx->field();
    for (int it = 0; it < 25; ++it) {
      const std::size_t n = 1 + it % 4;
      TensorPoint x(n);
      TensorPoint y(n);
      for (auto& e : x) e = dzv::testing::random_poly(fq, 3, Var::theta);
      for (auto& e : y) e = dzv::testing::random_poly(fq, 3, Var::theta);
      const Poly a = dzv::testing::random_poly(fq, 5);
      const Poly b = dzv::testing::random_poly(fq, 5);
      auto add = [&](const TensorPoint& u, const TensorPoint& v) {
        TensorPoint r(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] + v[i];
        return r;
      };
      CHECK(ctx->carlitz_action(a + b, x) == add(ctx->carlitz_action(a, x), ctx->carlitz_action(b, x)));
      CHECK(ctx->carlitz_action(a * b, x) == ctx->carlitz_action(a, ctx->carlitz_action(b, x)));
      CHECK(ctx->carlitz_action(a, add(x, y)) == add(ctx->carlitz_action(a, x), ctx->carlitz_action(a, y)));
    }
  }
}

TEST_CASE("log bottom row") {
  auto c2 = CarlitzContext::of_order(2);
  const auto& f = c2->field();
  for (unsigned i = 1; i <= 3; ++i) {
    const auto r = c2->log_bottom_row(i, 1);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == RatFunc(th(f, {1}), c2->L(i)));
  }
  const Poly l1 = th(f, {0, 1, 1});
  CHECK(c2->L(1) == l1);
  const auto r = c2->log_bottom_row(1, 2);
  CHECK(r[0] == RatFunc(th(f, {0, 1, 1}), l1 * l1));
  CHECK(r[1] == RatFunc(th(f, {1}), l1 * l1));
  auto c3 = CarlitzContext::of_order(3);
  for (unsigned n = 1; n <= 4; ++n) CHECK(c3->log_bottom_row(2, n).back() == RatFunc(th(c3->field(), {1}), c3->L(2).pow(n)));
}

TEST_CASE("Euler ratios from the exponential") {
  auto c2 = CarlitzContext::of_order(2);
  const auto& f = c2->field();
  const Poly d1 = th(f, {0, 1, 1});
  CHECK(c2->euler_ratio_raw(1) == RatFunc(th(f, {1}), d1));
  CHECK(c2->euler_ratio_raw(2) == RatFunc(th(f, {1}), d1 * d1));
  CHECK_THROWS_AS(c2->euler_ratio(1), std::logic_error);
  c2->set_euler_sign(1);
  CHECK(c2->euler_ratio(2) == c2->euler_ratio_raw(2));

  auto c3 = CarlitzContext::of_order(3);
  CHECK_THROWS_AS(c3->euler_ratio_raw(3), std::invalid_argument);
  // Computing far ahead first must not change earlier coefficients.
  auto c3b = CarlitzContext::of_order(3);
  const RatFunc late = c3b->euler_ratio_raw(40);
  CHECK(c3->euler_ratio_raw(2) == c3b->euler_ratio_raw(2));
  CHECK(c3->euler_ratio_raw(40) == late);
  c3->set_euler_sign(-1);
  CHECK(c3->euler_ratio(4) == -c3->euler_ratio_raw(4));
}

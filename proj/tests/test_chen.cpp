#include "doctest.h"
#include "dzv/chen.hpp"
#include "dzv/numeric.hpp"

using namespace dzv;

namespace {

bool vanishes(const LaurentSeries& x, std::int64_t below) { return x.truncated(below).is_zero(); }

}  // namespace

TEST_CASE("product relation at q=2, weight 3") {
  auto ctx = CarlitzContext::of_order(2);
  NumericOracle(*ctx).calibrate_euler_sign();
  const ChenVector v = chen_vector(*ctx, 1, 2);
  CHECK(v.n == 3);
  CHECK(v.dz == std::vector<std::uint32_t>{1, 0});
  CHECK_FALSE(v.pi.is_zero());
  CHECK(v.pi == ctx->euler_ratio(1) * ctx->euler_ratio(2) - ctx->euler_ratio(3));
}

TEST_CASE("product relation at q=3, r = s = 2") {
  auto ctx = CarlitzContext::of_order(3);
  NumericOracle(*ctx).calibrate_euler_sign();
  const ChenVector v = chen_vector(*ctx, 2, 2);
  REQUIRE(v.dz.size() == 3);
  // 1 + 1 from the two orderings, −1 − 1 from j = 2.
  CHECK(v.dz[1] == 0);
  CHECK(v.pi.is_zero());
  CHECK(chen_vectors(*ctx, 4).size() == 1);
  CHECK(fp_linear_count(*ctx, 4) == 0);
}

TEST_CASE("argument checks") {
  auto ctx = CarlitzContext::of_order(3);
  NumericOracle(*ctx).calibrate_euler_sign();
  CHECK_THROWS_AS(chen_vector(*ctx, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(chen_vector(*ctx, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(fp_linear_count(*ctx, 5), std::invalid_argument);
  CHECK_THROWS_AS(fp_linear_count(*ctx, 0), std::invalid_argument);
}

TEST_CASE("F_p-linear counts, q=2") {
  auto ctx = CarlitzContext::of_order(2);
  NumericOracle(*ctx).calibrate_euler_sign();
  const std::vector<std::size_t> want{0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5, 5, 6, 6, 6};
  for (unsigned n = 2; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(fp_linear_count(*ctx, n) == want[n - 2]);
  }
}

TEST_CASE("F_p-linear counts, q=3") {
  auto ctx = CarlitzContext::of_order(3);
  NumericOracle(*ctx).calibrate_euler_sign();
  const std::vector<std::size_t> want{0, 0, 1, 1, 1, 1, 2, 2, 2};
  for (unsigned n = 4; n <= 20; n += 2) {
    CAPTURE(n);
    CHECK(fp_linear_count(*ctx, n) == want[n / 2 - 2]);
  }
}

TEST_CASE("count never exceeds the number of products") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto ctx = CarlitzContext::of_order(q);
    NumericOracle(*ctx).calibrate_euler_sign();
    for (unsigned n = q - 1; n <= 24; n += q - 1) {
      if (n < 2) continue;
      CHECK(fp_linear_count(*ctx, n) <= chen_vectors(*ctx, n).size());
    }
  }
}

// Truncated sums satisfy the product rule exactly, so the dz part can be
// checked against products of single zeta values without using π̃.
TEST_CASE("shuffle part against products of truncated single sums") {
  for (std::uint32_t q : {2u, 3u}) {
    auto ctx = CarlitzContext::of_order(q);
    const NumericOracle o(*ctx);
    o.calibrate_euler_sign();
    const unsigned dmax = q == 2 ? 7 : 4;
    const std::int64_t prec = 60;
    for (unsigned n = 2; n <= (q == 2 ? 8u : 12u); ++n) {
      for (const auto& v : chen_vectors(*ctx, n)) {
        LaurentSeries lhs = o.zeta_single(v.r, dmax, prec).value * o.zeta_single(v.s, dmax, prec).value;
        LaurentSeries rhs = o.zeta_single(n, dmax, prec).value;
        for (unsigned i = 1; i < n; ++i) {
          if (v.dz[i - 1] == 0) continue;
          const LaurentSeries z = o.zeta_double(i, n - i, dmax, prec).value;
          for (std::uint32_t c = 0; c < v.dz[i - 1]; ++c) rhs = rhs + z;
        }
        CAPTURE(q);
        CAPTURE(v.r);
        CAPTURE(v.s);
        const LaurentSeries diff = lhs - rhs;
        CHECK(diff.precision() >= 8);
        CHECK(diff.is_zero());
      }
    }
  }
}

TEST_CASE("full relation vanishes numerically") {
  for (std::uint32_t q : {2u, 3u}) {
    auto ctx = CarlitzContext::of_order(q);
    const NumericOracle o(*ctx);
    o.calibrate_euler_sign();
    for (unsigned n = 2; n <= 10; ++n) {
      for (const auto& v : chen_vectors(*ctx, n)) {
        std::vector<ZetaTerm> terms;
        for (unsigned i = 1; i < n; ++i) {
          if (v.dz[i - 1] == 0) continue;
          terms.push_back({i, n - i, Poly::constant(ctx->field(), ctx->field().from_int(v.dz[i - 1]), Var::theta)});
        }
        const std::int64_t prec = 20;
        const LaurentSeries z = o.evaluate(terms, 10, prec);
        const LaurentSeries pi = LaurentSeries::from_ratfunc(v.pi, prec + 2 * static_cast<std::int64_t>(n)) *
                                 o.pi_power(n, prec + 2 * static_cast<std::int64_t>(n));
        CAPTURE(q);
        CAPTURE(v.r);
        CAPTURE(v.s);
        CHECK(vanishes(pi - z, prec));
      }
    }
  }
}

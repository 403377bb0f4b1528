#include <gtest/gtest.h>

#include "bmcycles/interpolation.hpp"

using namespace bmc;

TEST(Interpolation, GeometricKernelInvertsFactor) {
  for (long p : {5L, 7L})
    for (long e : {2L, 3L}) {
      const auto ctx = TameFieldContext::create(p, e, 40);
      const auto& a = ctx.conjugates[0];
      const auto& b = ctx.conjugates[1];
      for (long r = 1; r <= 4; ++r)
        for (long r2 = 1; r2 <= 4; ++r2) {
          const LocalPoly x = geometric_kernel(r, r2, a, b);
          const LocalPoly prod =
              LocalPoly::multiply(x, LocalPoly::linear(a, b).pow(static_cast<std::size_t>(r2)), static_cast<std::size_t>(r));
          EXPECT_EQ(prod.coeff(0), ctx.one()) << p << e << r << r2;
          for (long n = 1; n < r; ++n) EXPECT_TRUE(prod.coeff(static_cast<std::size_t>(n)).is_zero()) << p << e << r << r2 << n;
        }
    }
}

TEST(Interpolation, NuIsOneForTameFields) {
  for (long p : {5L, 7L, 11L})
    for (long e : {2L, 3L}) EXPECT_EQ(nu_invariant(TameFieldContext::create(p, e)), 1);
}

TEST(Interpolation, RecenterRoundTrip) {
  const auto ctx = TameFieldContext::create(5, 3, 30);
  const LocalPoly f(ctx.conjugates[1], {ctx.integer(3), ctx.pi, ctx.integer(-2), ctx.one()});
  const LocalPoly back = f.recentered(ctx.zero()).recentered(ctx.conjugates[1]);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(back.coeff(k), f.coeff(k));
}

TEST(Interpolation, WorkedInstance) {
  const auto ctx = TameFieldContext::create(5, 2, 30);
  const auto rep = interpolate_claim(ctx, std::vector<LocalFieldElement>(5, ctx.one()), {2, 2}, 0);
  EXPECT_TRUE(rep.congruence);
  EXPECT_TRUE(rep.divisibility);
  EXPECT_TRUE(rep.integrality);
  EXPECT_TRUE(rep.ledger_ok);
  ASSERT_EQ(rep.ledger.size(), 2u);
  EXPECT_EQ(rep.ledger[0].bound, 3);
  EXPECT_EQ(rep.ledger[1].bound, 2);
  EXPECT_GE(rep.verified_precision, 10);
}

TEST(Interpolation, BoundEnforced) {
  const auto ctx = TameFieldContext::create(5, 2, 30);
  EXPECT_THROW(interpolate_claim(ctx, std::vector<LocalFieldElement>(5, ctx.one()), {4, 3}, 0), Error);
}

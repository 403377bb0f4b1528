#include <gtest/gtest.h>

#include "bmcycles/suites.hpp"

using namespace bmc;

TEST(Characters, DimensionProductFormulaMatchesCoefficients) {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    Weight w{rng.uniform(0, 5), 0, 0};
    w[1] = rng.uniform(0, w[0]);
    w[2] = rng.uniform(-2, w[1]);
    EXPECT_EQ(weyl_dim(w), weyl_character(w).coefficient_sum()) << weight_to_string(w);
  }
}

TEST(Characters, VirtualDimensions) {
  // ν + ρ singular gives zero; a reflected weight gives a sign.
  EXPECT_TRUE(virtual_weyl_character({-1, 0}).is_zero());
  EXPECT_EQ(character_dim({-2, 0}), -1);
  EXPECT_EQ(character_dim({-3, 0}), weyl_dim({-3, 0}));
}

TEST(Characters, GL2SymmetricPower) {
  const Character c = weyl_character({2, 0});
  EXPECT_EQ(c.coeff({2, 0}), 1);
  EXPECT_EQ(c.coeff({1, 1}), 1);
  EXPECT_EQ(c.coeff({0, 2}), 1);
  EXPECT_EQ(c.size(), 3u);
}

TEST(Characters, ClebschGordanWithDeterminantTwists) {
  const Multiplicities m = decompose(weyl_character({3, 1}) * weyl_character({1, -1}));
  const Multiplicities expect{{{4, 0}, 1}, {{3, 1}, 1}, {{2, 2}, 1}};
  EXPECT_EQ(m, expect);
}

TEST(Characters, GL3TensorDimensions) {
  const Character ch = weyl_character({1, 0, 0}) * weyl_character({1, 1, 0});
  const Multiplicities m = decompose(ch);
  const Multiplicities expect{{{2, 1, 0}, 1}, {{1, 1, 1}, 1}};
  EXPECT_EQ(m, expect);
  EXPECT_EQ(recompose(m, 3), ch);
}

TEST(Characters, DecomposeRejectsNonSymmetric) {
  EXPECT_THROW(decompose(LaurentPoly::monomial({1, 0})), Error);
}

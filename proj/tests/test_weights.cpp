#include <gtest/gtest.h>

#include "bmcycles/weights.hpp"

using namespace bmc;

TEST(Weights, RhoAndDual) {
  EXPECT_EQ(rho(3), (Weight{2, 1, 0}));
  EXPECT_EQ(dual_weight({3, 1, -2}), (Weight{2, -1, -3}));
  EXPECT_EQ(dual_weight(dual_weight({4, 4, 0})), (Weight{4, 4, 0}));
}

TEST(Weights, Dominance) {
  EXPECT_TRUE(dominance_leq({1, 1}, {2, 0}));
  EXPECT_FALSE(dominance_leq({2, 0}, {1, 1}));
  EXPECT_FALSE(dominance_leq({1, 0}, {2, 0}));
  EXPECT_TRUE(dominance_leq({1, 1, 1}, {3, 0, 0}));
}

TEST(Weights, FlagDim) {
  EXPECT_EQ(flag_dim({2, 0}), 1);
  EXPECT_EQ(flag_dim({1, 1}), 0);
  EXPECT_EQ(flag_dim({3, 3, 0}), 2);
  EXPECT_EQ(flag_dim({2, 1, 0}), 3);
}

TEST(Weights, TildeLift) {
  const EmbeddingData emb(5, 2, 1);
  EXPECT_EQ(tilde_lift({{2, 0}}, emb).weights, (std::vector<Weight>{{3, 0}, {1, 0}}));
  EXPECT_EQ(tilde_lift({{1, 1}}, emb).weights, (std::vector<Weight>{{2, 1}, {1, 0}}));
  const EmbeddingData emb2(3, 2, 2, {1, 0});
  EXPECT_EQ(tilde_lift({{1, 0}, {2, 0}}, emb2).weights, (std::vector<Weight>{{1, 0}, {2, 0}, {3, 0}, {1, 0}}));
}

TEST(Weights, HodgeTypeValidation) {
  const EmbeddingData emb(5, 2, 1);
  EXPECT_THROW(HodgeType(emb, {{2, 0}}), Error);
  EXPECT_THROW(HodgeType(emb, {{0, 2}, {1, 0}}), Error);
  EXPECT_FALSE(HodgeType(emb, {{1, 1}, {1, 0}}).regular());
}

TEST(Weights, Bounds) {
  const EmbeddingData emb(5, 2, 1);
  const HodgeType mu(emb, {{4, 0}, {4, 0}});
  const BoundReport nat = validate_hodge_bound(mu, BoundKind::natural);
  EXPECT_FALSE(nat.pass);
  EXPECT_EQ(nat.limit, 6);
  EXPECT_EQ(nat.sums, (std::vector<long>{8}));
  EXPECT_TRUE(validate_hodge_bound(HodgeType(emb, {{3, 0}, {2, 0}}), BoundKind::sharper).pass);
  EXPECT_FALSE(validate_hodge_bound(HodgeType(emb, {{4, 0}, {2, 0}}), BoundKind::sharper).pass);
}

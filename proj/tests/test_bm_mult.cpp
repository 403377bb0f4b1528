#include <gtest/gtest.h>

#include "bmcycles/bm_mult.hpp"

using namespace bmc;

TEST(BMMult, WorkedInstance) {
  const HodgeType mu(EmbeddingData(5, 2, 1), {{2, 0}, {2, 0}});
  const auto m = bm_multiplicities(mu);
  const std::map<SerreTuple, Integer> expect{{{{2, 0}}, 1}, {{{1, 1}}, 1}};
  EXPECT_EQ(m, expect);
  const BMIdentity id = bm_identity(mu);
  ASSERT_EQ(id.terms.size(), 2u);
  EXPECT_EQ(id.terms[0].lift.weights, (std::vector<Weight>{{2, 1}, {1, 0}}));
  EXPECT_EQ(id.terms[1].lift.weights, (std::vector<Weight>{{3, 0}, {1, 0}}));
}

TEST(BMMult, TildeLiftIsItsOwnTerm) {
  const EmbeddingData emb(5, 2, 1);
  const HodgeType mu = tilde_lift({{3, 1}}, emb);
  const BMIdentity id = bm_identity(mu);
  ASSERT_EQ(id.terms.size(), 1u);
  EXPECT_EQ(id.terms[0].lambda, (SerreTuple{{3, 1}}));
  EXPECT_EQ(id.terms[0].multiplicity, 1);
}

TEST(BMMult, SteinbergDetection) {
  // e = 1, μ = (p, 0): λ = (p−1, 0) has gap p−1.
  const HodgeType mu(EmbeddingData(3, 1, 1), {{3, 0}});
  const BMIdentity id = bm_identity(mu);
  EXPECT_TRUE(id.has_steinberg);
  EXPECT_TRUE(is_steinberg({{2, 0}}, 3));
  EXPECT_FALSE(is_steinberg({{1, 0}}, 3));
}

TEST(BMMult, BoundViolation) {
  const HodgeType mu(EmbeddingData(5, 2, 1), {{4, 0}, {4, 0}});
  try {
    bm_identity(mu);
    FAIL() << "expected BoundViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundViolated);
    EXPECT_NE(std::string(e.what()).find("[8]"), std::string::npos);
  }
  EXPECT_NO_THROW(bm_multiplicities(mu, true));
}

TEST(BMMult, ProductOverResidueEmbeddings) {
  const HodgeType mu(EmbeddingData(5, 2, 2), {{2, 0}, {2, 0}, {1, 0}, {1, 0}});
  const auto m = bm_multiplicities(mu);
  // Residue 0 splits as (2,0)+(1,1); residue 1 gives only (0,0).
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.at({{2, 0}, {0, 0}}), 1);
  EXPECT_EQ(m.at({{1, 1}, {0, 0}}), 1);
}

TEST(BMMult, CandidateSupportContainsSupport) {
  const HodgeType mu(EmbeddingData(7, 3, 1), {{3, 0}, {2, 0}, {2, 0}});
  const auto cand = candidate_support(mu);
  for (const auto& [t, c] : bm_multiplicities(mu))
    EXPECT_NE(std::find(cand.begin(), cand.end(), t), cand.end()) << serre_tuple_to_string(t);
}

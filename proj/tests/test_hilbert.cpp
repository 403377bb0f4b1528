#include <gtest/gtest.h>

#include "bmcycles/hilbert.hpp"

using namespace bmc;

namespace {
const std::vector<Weight> kSquare{{2, 0}, {2, 0}};
const Multiplicities kSquareMult{{{2, 0}, 1}, {{1, 1}, 1}};
}  // namespace

TEST(Hilbert, ShiftedIdentityWorked) {
  const auto r = shifted_identity_check(kSquare, kSquareMult, 8);
  EXPECT_TRUE(r.pass);
  for (long n = 1; n <= 8; ++n) {
    EXPECT_EQ(r.sides[static_cast<std::size_t>(n - 1)].first, 4 * n * n);
    EXPECT_EQ(weighted_lift_dims({{{2, 0}, 1}}, 2, 2, n, DimShift::minus_rho), 3 * n * n);
  }
}

TEST(Hilbert, DefectValues) {
  for (long n = 1; n <= 6; ++n) EXPECT_EQ(defect_value(kSquare, kSquareMult, n), -2 * n - 1);
  const auto s = defect_degree(kSquare, kSquareMult);
  EXPECT_EQ(s.degree, 1);
  EXPECT_EQ(s.claimed_degree_bound, 2);
  EXPECT_TRUE(s.pass);
}

TEST(Hilbert, ShortWindowRefused) {
  EXPECT_THROW(defect_degree(kSquare, kSquareMult, {1, 2, 3, 4}), Error);
}

TEST(Hilbert, OvercountForcesDegreeJump) {
  const auto r = equality_forcing_check(kSquare, kSquareMult, {{{1, 1}, 1}});
  EXPECT_TRUE(r.detected);
  EXPECT_EQ(r.defect.degree, 2);
  EXPECT_THROW(equality_forcing_check(kSquare, kSquareMult, {{{1, 1}, 0}}), Error);
}

TEST(Hilbert, FiniteDifferences) {
  std::vector<Integer> cubic;
  for (long n = 0; n < 7; ++n) cubic.push_back(n * n * n - 2 * n + 5);
  EXPECT_EQ(finite_difference_degree(cubic), std::make_pair(3L, true));
  EXPECT_EQ(finite_difference_degree({0, 0, 0}), std::make_pair(-1L, true));
}

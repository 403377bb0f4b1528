#include <gtest/gtest.h>

#include "bmcycles/suites.hpp"

using namespace bmc;

TEST(BreuilKisin, ScalarTorsorMatchesProduct) {
  const PrimeField f(3);
  const std::size_t M = 40;
  const BKMatrix bk{FpLaurentMatrix(diagonal_powers(f, {1}, M)), 1, 1};
  Rng rng(2);
  const FpLaurentMatrix g = random_congruence_element(f, 1, 1, M, rng);
  const TorsorSolution sol = torsor_solve(bk, g, 1);
  FpLaurentMatrix prod = FpLaurentMatrix::identity(f, 1, M), term = g;
  for (int n = 0; n < 6; ++n) {
    prod = prod * term.inverse();
    term = matrix_phi(term, M);
  }
  EXPECT_EQ(sol.g0, prod);
  EXPECT_FALSE(sol.residual_valuation.has_value());
}

TEST(BreuilKisin, RecoversKnownSolution) {
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const PrimeField f(3);
    const BKMatrix bk = random_bk_matrix(f, 2, 1, 1, 48, rng);
    const FpLaurentMatrix g0 = random_congruence_element(f, 2, 1, 48, rng);
    const FpLaurentMatrix g = inverse_direction_check(bk, g0, 1);
    EXPECT_EQ(torsor_solve(bk, g, 1).g0, g0);
  }
}

TEST(BreuilKisin, ConvergenceConditionEnforced) {
  const PrimeField f(2);
  const BKMatrix bk{FpLaurentMatrix(diagonal_powers(f, {2}, 32)), 2, 1};
  const FpLaurentMatrix g = FpLaurentMatrix::identity(f, 1, 32);
  try {
    torsor_solve(bk, g, 1);
    FAIL() << "expected ConvergenceConditionViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConvergenceConditionViolated);
  }
  EXPECT_NO_THROW(torsor_solve(bk, g, 3));
}

TEST(BreuilKisin, LedgerIdentity) {
  for (long p : {2L, 3L, 7L})
    for (long N = 1; N <= 5; ++N)
      for (long n = 0; n <= 8; ++n) EXPECT_TRUE(convergence_ledger_identity(p, N, n));
}

TEST(BreuilKisin, CongruenceSubgroup) {
  const PrimeField f(5);
  std::vector<std::uint64_t> c{1, 0, 3};
  FpSeriesMatrix m = series_identity(f, 1, 10);
  m(0, 0) = FpSeries(f, c, 10);
  EXPECT_TRUE(in_congruence_subgroup(FpLaurentMatrix(m), 2));
  EXPECT_FALSE(in_congruence_subgroup(FpLaurentMatrix(m), 3));
}

TEST(BreuilKisin, HeightCheck) {
  const PrimeField f(3);
  EXPECT_TRUE(height_check({FpLaurentMatrix(diagonal_powers(f, {1, 0}, 20)), 1, 1}));
  EXPECT_FALSE(height_check({FpLaurentMatrix(diagonal_powers(f, {2, 0}, 20)), 1, 1}));
}

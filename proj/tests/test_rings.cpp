#include <gtest/gtest.h>

#include "bmcycles/suites.hpp"

using namespace bmc;

TEST(Series, InverseTimesSelfIsOne) {
  const PrimeField f(7);
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const FpSeries s = random_unit_series(f, 25, rng);
    EXPECT_EQ(s * s.inverse(), FpSeries::one(f, 25));
  }
}

TEST(Series, PhiIsRingMap) {
  const PrimeField f(3);
  Rng rng(5);
  const FpSeries a = random_series(f, 30, rng), b = random_series(f, 30, rng);
  EXPECT_EQ(series_phi(a * b, 30), series_phi(a, 30) * series_phi(b, 30));
}

TEST(Series, NablaOfMonomial) {
  const PrimeField f(5);
  const FpSeries s = FpSeries::monomial(f, 3, 10);
  EXPECT_EQ(s.nabla(), s.scaled(3));
}

TEST(Poly, XgcdBezout) {
  const RationalField q;
  const QPoly a(q, {Rational(-1), Rational(0), Rational(1)});  // u^2 - 1
  const QPoly b(q, {Rational(1), Rational(1)});                // u + 1
  const auto [g, s, t] = poly_xgcd(a, b);
  EXPECT_EQ(g, b);
  EXPECT_EQ(s * a + t * b, g);
}

TEST(Poly, TaylorShiftAndRootOrder) {
  const RationalField q;
  const QPoly p = QPoly::linear(q, Rational(2)).pow(3) * QPoly::linear(q, Rational(-1));
  EXPECT_EQ(p.root_order(Rational(2)), 3u);
  EXPECT_EQ(p.root_order(Rational(-1)), 1u);
  const QPoly s = p.taylor_shift(Rational(2));
  EXPECT_EQ(s.coeff(0), 0);
  EXPECT_EQ(s.coeff(3), 3);  // (v)^3 (v + 3)
}

TEST(Matrix, DeterminantMatchesLeibniz) {
  Matrix<Rational> m(3, 3, Rational(0));
  long vals[9] = {2, -1, 3, 0, 4, 1, 5, 2, -2};
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = vals[i];
  // Leibniz by hand.
  const long d = 2 * (4 * -2 - 1 * 2) - (-1) * (0 * -2 - 1 * 5) + 3 * (0 * 2 - 4 * 5);
  EXPECT_EQ(determinant(m), d);
  const Matrix<Rational> adj = adjugate(m, Rational(1));
  const Matrix<Rational> prod = adj * m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(prod(i, j), i == j ? Rational(d) : Rational(0));
}

TEST(LaurentPoly, ExactDivisionRoundTrip) {
  const LaurentPoly a = alternating_sum({3, 0});
  const LaurentPoly r = alternating_sum({1, 0});
  const LaurentPoly q = a.divide_exact(r);
  EXPECT_EQ(q * r, a);
  EXPECT_TRUE(q.is_symmetric());
}

TEST(LocalField, UniformizerPowerIsP) {
  for (long p : {5L, 7L})
    for (long e : {2L, 3L}) {
      const auto F = TameField::create(p, e);
      const auto pi = LocalFieldElement::pi(F, 40);
      EXPECT_EQ(pi.pow(e), LocalFieldElement::from_integer(F, p, 40));
      EXPECT_EQ(lf_valuation(pi), 1);
    }
}

TEST(LocalField, RootOfUnityIsPrimitive) {
  for (long p : {5L, 7L})
    for (long e : {2L, 3L}) {
      const auto F = TameField::create(p, e);
      const auto z = primitive_root_of_unity(F, 40);
      const auto one = LocalFieldElement::one(F, 40);
      EXPECT_EQ(z.pow(e), one);
      for (long k = 1; k < e; ++k) EXPECT_EQ(lf_valuation(z.pow(k) - one), 0) << p << " " << e << " " << k;
    }
}

TEST(LocalField, InverseAndRationals) {
  const auto F = TameField::create(5, 2);
  const auto x = LocalFieldElement::from_rational(F, Rational(3, 25), 30);
  EXPECT_EQ(lf_valuation(x), -4);
  EXPECT_EQ(x * x.inverse(), LocalFieldElement::one(F, 20));
  const auto y = LocalFieldElement::from_integer(F, 7, 30) + LocalFieldElement::pi(F, 30);
  EXPECT_EQ(y * y.inverse(), LocalFieldElement::one(F, 30));
}

TEST(LocalField, WildRamificationRefused) {
  EXPECT_THROW(TameField::create(3, 3), Error);
}

#include <gtest/gtest.h>

#include "bmcycles/suites.hpp"

using namespace bmc;

namespace {

// Elementary divisors from determinantal divisors: δ_k = min valuation of k×k minors.
Weight type_from_minors(const SpecialLattice& L) {
  const auto& n = L.gens.numerator();
  const std::size_t d = n.rows();
  std::vector<long> delta{0};
  for (std::size_t k = 1; k <= d; ++k) {
    long best = std::numeric_limits<long>::max();
    for (unsigned rows = 0; rows < (1u << d); ++rows) {
      if (static_cast<std::size_t>(__builtin_popcount(rows)) != k) continue;
      for (unsigned cols = 0; cols < (1u << d); ++cols) {
        if (static_cast<std::size_t>(__builtin_popcount(cols)) != k) continue;
        FpSeriesMatrix sub(k, k, n(0, 0));
        for (std::size_t i = 0, si = 0; i < d; ++i) {
          if (!(rows >> i & 1)) continue;
          for (std::size_t j = 0, sj = 0; j < d; ++j)
            if (cols >> j & 1) sub(si, sj++) = n(i, j);
          ++si;
        }
        if (auto v = determinant(sub).valuation()) best = std::min(best, static_cast<long>(*v));
      }
    }
    delta.push_back(best);
  }
  Weight out;
  for (std::size_t k = 1; k <= d; ++k) out.push_back(delta[k] - delta[k - 1] - static_cast<long>(L.gens.denom_exponent()));
  return sorted_decreasing(out);
}

}  // namespace

TEST(Grassmannian, SmithTypeMatchesDeterminantalDivisors) {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const long p = t % 2 ? 3 : 5;
    const auto sl = random_special_lattice(PrimeField(static_cast<std::uint64_t>(p)), 3, 1, -2, 3, 40, rng);
    EXPECT_EQ(smith_type(sl.lattice), sl.type);
    EXPECT_EQ(type_from_minors(sl.lattice), sl.type);
  }
}

TEST(Grassmannian, SpecialDualAndContainment) {
  const PrimeField f(5);
  const std::vector<long> ex{2, 0};
  const SpecialLattice L{1, FpLaurentMatrix(diagonal_powers(f, ex, 20))};
  EXPECT_EQ(smith_type(L), (Weight{2, 0}));
  EXPECT_EQ(smith_type(lattice_dual(L)), (Weight{0, -2}));
  const SpecialLattice std2 = standard_special_lattice(f, 2, 1, 20);
  EXPECT_TRUE(lattice_contains(std2, L));
  EXPECT_FALSE(lattice_contains(L, std2));
  EXPECT_TRUE(lattice_equal(lattice_dual(lattice_dual(L)), L));
}

TEST(Grassmannian, NablaCheckOnCellPoints) {
  // λ = (2,0), e = 1, p = 5: the constant coefficient is free, the linear one is not.
  const PrimeField f(5);
  auto lat = [&](std::vector<std::uint64_t> a) {
    return cell_point_lattice({2, 0}, 1, f, [&](std::size_t, std::size_t) { return a; }, 30);
  };
  EXPECT_TRUE(nabla_check(lat({1, 0})));
  EXPECT_FALSE(nabla_check(lat({0, 1})));
  EXPECT_EQ(nabla_cell_dimension({2, 0}, 1, 5).dimension, 1);
}

TEST(Grassmannian, CellDimensionsAndBound) {
  EXPECT_EQ(nabla_cell_dimension({4, 0}, 2, 5).dimension, 2);
  EXPECT_EQ(nabla_cell_dimension({1, 0}, 3, 5).dimension, 1);
  EXPECT_THROW(nabla_cell_dimension({7, 0}, 1, 5), Error);
  EXPECT_EQ(nabla_cell_brute_force({4, 0}, 2, 5).kernel_dimension, 2);
}

TEST(Grassmannian, FiltrationLattice) {
  const std::vector<Rational> pts{1, -1};
  Matrix<Rational> id(2, 2, Rational(0));
  id(0, 0) = 1;
  id(1, 1) = 1;
  const GenericLattice L = filtration_to_lattice({{id, {0, 1}}, {id, {1, 0}}}, {{1, 0}, {1, 0}}, pts);
  QPolyMatrix expect = qpoly_identity(2);
  expect(0, 0) = qpoly_linear(-1);
  expect(1, 1) = qpoly_linear(1);
  EXPECT_TRUE(lattice_equal(L, GenericLattice(pts, expect)));
  EXPECT_EQ(smith_type(L), (std::vector<Weight>{{1, 0}, {1, 0}}));
  EXPECT_TRUE(nabla_check(L));
}

TEST(Grassmannian, FiltrationWithNegativeJumps) {
  const std::vector<Rational> pts{0, 2, -3};
  Matrix<Rational> b(2, 2, Rational(0));
  b(0, 0) = 1;
  b(0, 1) = 2;
  b(1, 1) = 1;
  const std::vector<Weight> mus{{2, -1}, {0, -1}, {1, 1}};
  const GenericLattice L = filtration_to_lattice({{b, {-1, 2}}, {b, {0, -1}}, {b, {1, 1}}}, mus, pts);
  EXPECT_EQ(smith_type(L), mus);
  EXPECT_TRUE(nabla_check(L));
}

TEST(Grassmannian, GenericIntersectionAndDual) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto pts = random_distinct_points(2, rng);
    const auto a = random_generic_lattice(2, pts, -2, 2, rng).lattice;
    const auto b = random_generic_lattice(2, pts, -2, 2, rng).lattice;
    const auto i = lattice_intersection(a, b);
    const auto s = lattice_sum(a, b);
    EXPECT_TRUE(lattice_contains(a, i));
    EXPECT_TRUE(lattice_contains(b, i));
    EXPECT_TRUE(lattice_contains(s, a));
    EXPECT_TRUE(lattice_contains(s, b));
    EXPECT_TRUE(lattice_equal(lattice_dual(lattice_dual(a)), a));
    EXPECT_TRUE(lattice_equal(lattice_intersection(a, a), a));
  }
}

TEST(Grassmannian, GenericRejectsStrayRoots) {
  QPolyMatrix m = qpoly_identity(2);
  m(0, 0) = qpoly_linear(5);
  EXPECT_THROW(GenericLattice({Rational(1)}, m), Error);
}

TEST(Grassmannian, PsiHeight) {
  const PrimeField f(3);
  const FpLaurentMatrix c(diagonal_powers(f, {2, 0}, 20));
  EXPECT_THROW(psi_lattice(c, 1, 1), Error);
  EXPECT_EQ(smith_type(psi_lattice(c, 1, 2)), (Weight{0, -2}));
}

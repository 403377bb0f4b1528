#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bmcycles/errors.hpp"
#include "bmcycles/rings/field.hpp"
#include "bmcycles/rings/laurent_series_matrix.hpp"
#include "bmcycles/rings/matrix.hpp"
#include "bmcycles/rings/poly.hpp"
#include "bmcycles/rings/series.hpp"
#include "bmcycles/weights.hpp"

namespace bmc {

// ---------------------------------------------------------------------------
// Elementary divisors over a truncated power series ring

/// Valuations of the elementary divisors, largest first, by valuation-pivot
/// elimination. Each pivot costs its valuation in precision.
template <class Field>
std::vector<long> smith_valuations(SeriesMatrix<Field> m) {
  require(m.square(), ErrorKind::RankMismatch, "elementary divisors of a non-square matrix");
  const std::size_t d = m.rows();
  std::vector<long> vals;
  for (std::size_t s = 0; s < d; ++s) {
    std::optional<std::size_t> best;
    std::size_t bi = s, bj = s;
    for (std::size_t i = s; i < d; ++i)
      for (std::size_t j = s; j < d; ++j)
        if (auto v = m(i, j).valuation(); v && (!best || *v < *best)) {
          best = v;
          bi = i;
          bj = j;
        }
    require(best.has_value(), ErrorKind::PrecisionExhausted,
            "no pivot found: remaining block vanishes to precision (singular or precision too low)");
    for (std::size_t j = 0; j < d; ++j) std::swap(m(s, j), m(bi, j));
    for (std::size_t i = 0; i < d; ++i) std::swap(m(i, s), m(i, bj));
    const std::size_t v = *best;
    const Series<Field> unit_inv = m(s, s).shifted_down(v).inverse();
    for (std::size_t i = s + 1; i < d; ++i) {
      const Series<Field>& a = m(i, s);
      if (a.is_zero()) {
        require(a.precision() >= v, ErrorKind::PrecisionExhausted, "entry below pivot known too coarsely");
        continue;
      }
      const Series<Field> factor = a.shifted_down(v) * unit_inv;
      for (std::size_t j = s + 1; j < d; ++j) m(i, j) = m(i, j) - factor * m(s, j);
    }
    // Column operations only touch row s once the pivot column is cleared.
    vals.push_back(static_cast<long>(v));
  }
  std::sort(vals.rbegin(), vals.rend());
  return vals;
}

// ---------------------------------------------------------------------------
// Special fibre: lattices in F_p((u))^d, E(u) = u^e

/// Column span of u^{-k} N over F_p[[u]].
struct SpecialLattice {
  long e = 1;
  FpLaurentMatrix gens;

  std::size_t dim() const { return gens.dim(); }
  const PrimeField& field() const { return gens.field(); }
};

inline SpecialLattice standard_special_lattice(const PrimeField& f, std::size_t d, long e, std::size_t precision) {
  return {e, FpLaurentMatrix::identity(f, d, precision)};
}

/// Elementary divisor type, sorted decreasing.
inline Weight smith_type(const SpecialLattice& L) {
  std::vector<long> v = smith_valuations(L.gens.numerator());
  for (auto& x : v) x -= static_cast<long>(L.gens.denom_exponent());
  return v;
}

/// Generators replaced by their inverse transpose.
inline SpecialLattice lattice_dual(const SpecialLattice& L) { return {L.e, L.gens.inverse().transposed()}; }

/// M ⊆ L, decided within precision.
inline bool lattice_contains(const SpecialLattice& L, const SpecialLattice& M) {
  const FpLaurentMatrix q = L.gens.inverse() * M.gens;
  require(q.absolute_precision() > 0, ErrorKind::PrecisionExhausted, "containment undecidable at this precision");
  return q.is_integral();
}
inline bool lattice_equal(const SpecialLattice& a, const SpecialLattice& b) {
  return lattice_contains(a, b) && lattice_contains(b, a);
}

inline SpecialLattice lattice_left_mul(const FpLaurentMatrix& g, const SpecialLattice& L) { return {L.e, g * L.gens}; }

/// E(u) ∇(L) ⊆ uL with ∇ = u d/du, i.e. X^{-1} u^{e-1} ∇X integral for generators X.
inline bool nabla_check(const SpecialLattice& L) {
  const FpLaurentMatrix q = L.gens.inverse() * L.gens.nabla().shifted(L.e - 1);
  require(q.absolute_precision() > 0, ErrorKind::PrecisionExhausted, "nabla check undecidable at this precision");
  return q.is_integral();
}

// ---------------------------------------------------------------------------
// Generic fibre: lattices in Q(u)^d near distinct points π_κ, E(u) = ∏ (u - π_κ)

using QPolyMatrix = Matrix<QPoly>;

inline QPoly qpoly_linear(const Rational& c) { return QPoly::linear(RationalField{}, c); }

inline QPolyMatrix qpoly_identity(std::size_t d) {
  QPolyMatrix m(d, d, QPoly::zero(RationalField{}));
  for (std::size_t i = 0; i < d; ++i) m(i, i) = QPoly::one(RationalField{});
  return m;
}

inline QPolyMatrix qpoly_constant_matrix(const Matrix<Rational>& a) {
  return a.map([](const Rational& x) { return QPoly::constant(RationalField{}, x); });
}

/// Root order of p at c, with the zero polynomial treated as infinitely divisible.
inline long root_order_or_inf(const QPoly& p, const Rational& c) {
  if (p.is_zero()) return std::numeric_limits<long>::max();
  return static_cast<long>(p.root_order(c));
}

/// Column Hermite reduction over Q[u]: a basis (d columns) of the column span of a d x n matrix of rank d.
inline QPolyMatrix column_hermite(const QPolyMatrix& a) {
  const std::size_t d = a.rows(), n = a.cols();
  require(n >= d, ErrorKind::SingularMatrix, "fewer generators than rank");
  std::vector<std::vector<QPoly>> cols(n, std::vector<QPoly>(d));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < d; ++i) cols[j][i] = a(i, j);
  auto combine = [&](std::size_t x, std::size_t y, const QPoly& s, const QPoly& t, const QPoly& u, const QPoly& v) {
    // (col_x, col_y) <- (s col_x + t col_y, u col_x + v col_y)
    for (std::size_t i = 0; i < d; ++i) {
      QPoly nx = s * cols[x][i] + t * cols[y][i];
      QPoly ny = u * cols[x][i] + v * cols[y][i];
      cols[x][i] = std::move(nx);
      cols[y][i] = std::move(ny);
    }
  };
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      if (cols[c][r].is_zero()) continue;
      if (cols[r][r].is_zero()) {
        std::swap(cols[r], cols[c]);
        continue;
      }
      const QPoly a0 = cols[r][r], b0 = cols[c][r];
      auto [g, s, t] = poly_xgcd(a0, b0);
      combine(r, c, s, t, b0.exact_div(g), -a0.exact_div(g));
    }
    require(!cols[r][r].is_zero(), ErrorKind::SingularMatrix, "generators do not span a full-rank module");
    // Keep earlier columns reduced modulo the pivot to control degrees.
    for (std::size_t c = 0; c < r; ++c) {
      const QPoly q = cols[c][r].divmod(cols[r][r]).first;
      if (q.is_zero()) continue;
      for (std::size_t i = 0; i < d; ++i) cols[c][i] = cols[c][i] - q * cols[r][i];
    }
  }
  QPolyMatrix out(d, d, QPoly::zero(RationalField{}));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) out(i, j) = cols[j][i];
  return out;
}

/// Column span of N · ∏_κ (u - π_κ)^{-k_κ} over Q[u], required to agree with
/// the standard lattice away from the points π_κ.
class GenericLattice {
 public:
  GenericLattice() = default;
  GenericLattice(std::vector<Rational> pis, QPolyMatrix num, std::vector<long> denom = {})
      : pis_(std::move(pis)), num_(std::move(num)), denom_(std::move(denom)) {
    require(num_.square() && num_.rows() > 0, ErrorKind::RankMismatch, "lattice generators must be square");
    for (std::size_t a = 0; a < pis_.size(); ++a)
      for (std::size_t b = a + 1; b < pis_.size(); ++b)
        require(pis_[a] != pis_[b], ErrorKind::CollidingPiValues, "points pi_kappa must be distinct");
    if (denom_.empty()) denom_.assign(pis_.size(), 0);
    require(denom_.size() == pis_.size(), ErrorKind::RankMismatch, "one denominator exponent per point");
    normalize();
  }

  static GenericLattice standard(std::vector<Rational> pis, std::size_t d) {
    return GenericLattice(std::move(pis), qpoly_identity(d));
  }

  std::size_t dim() const { return num_.rows(); }
  const std::vector<Rational>& pis() const { return pis_; }
  const QPolyMatrix& numerator() const { return num_; }
  const std::vector<long>& denominators() const { return denom_; }
  /// det N = c ∏ (u - π_κ)^{m_κ}.
  const Rational& det_constant() const { return det_c_; }
  const std::vector<long>& det_orders() const { return det_m_; }

  /// E(u) = ∏_κ (u - π_κ).
  QPoly eisenstein() const {
    QPoly e = QPoly::one(RationalField{});
    for (const auto& p : pis_) e *= qpoly_linear(p);
    return e;
  }
  /// ∏_κ (u - π_κ)^{k_κ}
  QPoly denominator_poly() const {
    QPoly e = QPoly::one(RationalField{});
    for (std::size_t k = 0; k < pis_.size(); ++k) e *= qpoly_linear(pis_[k]).pow(static_cast<std::size_t>(denom_[k]));
    return e;
  }

  /// Elementary divisor type at π_κ, sorted decreasing.
  Weight type_at(std::size_t kappa) const {
    const Rational& c = pis_.at(kappa);
    const std::size_t prec = static_cast<std::size_t>(2 * det_m_[kappa] + 2);
    SeriesMatrix<RationalField> local = num_.map([&](const QPoly& p) { return p.taylor_shift(c).to_series(prec); });
    std::vector<long> v = smith_valuations(local);
    for (auto& x : v) x -= denom_[kappa];
    return v;
  }

 private:
  void normalize() {
    for (std::size_t k = 0; k < pis_.size(); ++k) {
      const QPoly lin = qpoly_linear(pis_[k]);
      if (denom_[k] < 0) {
        const QPoly f = lin.pow(static_cast<std::size_t>(-denom_[k]));
        num_ = num_.map([&](const QPoly& p) { return p * f; });
        denom_[k] = 0;
      }
      while (denom_[k] > 0) {
        bool divisible = true;
        for (const auto& p : num_.data()) divisible = divisible && root_order_or_inf(p, pis_[k]) >= 1;
        if (!divisible) break;
        num_ = num_.map([&](const QPoly& p) { return p.exact_div(lin); });
        --denom_[k];
      }
    }
    QPoly det = determinant(num_);
    require(!det.is_zero(), ErrorKind::SingularMatrix, "lattice generators are singular");
    det_m_.assign(pis_.size(), 0);
    for (std::size_t k = 0; k < pis_.size(); ++k) {
      det_m_[k] = static_cast<long>(det.root_order(pis_[k]));
      det = det.exact_div(qpoly_linear(pis_[k]).pow(static_cast<std::size_t>(det_m_[k])));
    }
    require(det.degree() == 0, ErrorKind::SingularMatrix,
            "generators are not invertible away from the points pi_kappa (det has other roots)");
    det_c_ = det.coeff(0);
  }

  std::vector<Rational> pis_;
  QPolyMatrix num_;
  std::vector<long> denom_;
  Rational det_c_ = 1;
  std::vector<long> det_m_;
};

/// Types at every point π_κ.
inline std::vector<Weight> smith_type(const GenericLattice& L) {
  std::vector<Weight> out;
  for (std::size_t k = 0; k < L.pis().size(); ++k) out.push_back(L.type_at(k));
  return out;
}

inline GenericLattice lattice_dual(const GenericLattice& L) {
  const QPoly one = QPoly::one(RationalField{});
  const Rational cinv = 1 / L.det_constant();
  QPolyMatrix adjt = adjugate(L.numerator(), one).transposed();
  adjt = adjt.map([&](const QPoly& p) { return p.scaled(cinv); });
  std::vector<long> denom(L.pis().size());
  for (std::size_t k = 0; k < denom.size(); ++k) denom[k] = L.det_orders()[k] - L.denominators()[k];
  return GenericLattice(L.pis(), std::move(adjt), std::move(denom));
}

/// M ⊆ L.
inline bool lattice_contains(const GenericLattice& L, const GenericLattice& M) {
  require(L.pis() == M.pis() && L.dim() == M.dim(), ErrorKind::RankMismatch, "lattices over different bases");
  const QPolyMatrix q = adjugate(L.numerator(), QPoly::one(RationalField{})) * M.numerator();
  for (const auto& p : q.data())
    for (std::size_t k = 0; k < L.pis().size(); ++k) {
      const long need = L.det_orders()[k] - L.denominators()[k] + M.denominators()[k];
      if (root_order_or_inf(p, L.pis()[k]) < need) return false;
    }
  return true;
}
inline bool lattice_equal(const GenericLattice& a, const GenericLattice& b) {
  return lattice_contains(a, b) && lattice_contains(b, a);
}

inline GenericLattice lattice_sum(const GenericLattice& a, const GenericLattice& b) {
  require(a.pis() == b.pis() && a.dim() == b.dim(), ErrorKind::RankMismatch, "lattices over different bases");
  const std::size_t d = a.dim();
  std::vector<long> k(a.pis().size());
  QPoly fa = QPoly::one(RationalField{}), fb = fa;
  for (std::size_t i = 0; i < k.size(); ++i) {
    k[i] = std::max(a.denominators()[i], b.denominators()[i]);
    fa *= qpoly_linear(a.pis()[i]).pow(static_cast<std::size_t>(k[i] - a.denominators()[i]));
    fb *= qpoly_linear(a.pis()[i]).pow(static_cast<std::size_t>(k[i] - b.denominators()[i]));
  }
  QPolyMatrix both(d, 2 * d, QPoly::zero(RationalField{}));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      both(i, j) = a.numerator()(i, j) * fa;
      both(i, d + j) = b.numerator()(i, j) * fb;
    }
  return GenericLattice(a.pis(), column_hermite(both), k);
}

/// L1 ∩ L2 = (L1* + L2*)*.
inline GenericLattice lattice_intersection(const GenericLattice& a, const GenericLattice& b) {
  return lattice_dual(lattice_sum(lattice_dual(a), lattice_dual(b)));
}

/// E(u) ∇(L) ⊆ uL. With X = N/D this is adj(N) E (N'D − N D') divisible by det(N) D.
inline bool nabla_check(const GenericLattice& L) {
  const QPoly one = QPoly::one(RationalField{});
  const QPoly D = L.denominator_poly(), Dp = D.derivative();
  const QPolyMatrix& N = L.numerator();
  const QPolyMatrix Np = N.map([](const QPoly& p) { return p.derivative(); });
  const QPolyMatrix inner =
      Np.map([&](const QPoly& p) { return p * D; }) - N.map([&](const QPoly& p) { return p * Dp; });
  const QPoly E = L.eisenstein();
  const QPolyMatrix q = adjugate(N, one) * inner.map([&](const QPoly& p) { return p * E; });
  for (const auto& p : q.data())
    for (std::size_t k = 0; k < L.pis().size(); ++k)
      if (root_order_or_inf(p, L.pis()[k]) < L.det_orders()[k] + L.denominators()[k]) return false;
  return true;
}

/// A filtration on Q^d: column j of `basis` lies in Fil^{-jumps[j]} and spans
/// the graded piece there; its type is the multiset of jumps.
struct Filtration {
  Matrix<Rational> basis;
  Weight jumps;
};

/// ⋂_κ Σ_i (u - π_κ)^i Fil_κ^{-i} ⊗ Q[u], returned with the clearing factor
/// ∏ (u - π_κ)^{n_κ} removed again.
inline GenericLattice filtration_to_lattice(const std::vector<Filtration>& fils, const std::vector<Weight>& mu,
                                            const std::vector<Rational>& pis, std::vector<long> n = {}) {
  require(fils.size() == mu.size() && fils.size() == pis.size(), ErrorKind::RankMismatch,
          "need one filtration, weight and point per embedding");
  require(!fils.empty(), ErrorKind::RankMismatch, "no embeddings");
  const std::size_t d = mu[0].size();
  if (n.empty()) {
    n.assign(fils.size(), 0);
    for (std::size_t k = 0; k < fils.size(); ++k) n[k] = std::max(0L, -mu[k].back());
  }
  long slack = 0;
  for (const auto& m : mu) slack = std::max(slack, -m.back());
  std::optional<GenericLattice> acc;
  for (std::size_t k = 0; k < fils.size(); ++k) {
    const Filtration& F = fils[k];
    require(F.basis.rows() == d && F.basis.cols() == d && F.jumps.size() == d, ErrorKind::FiltrationTypeMismatch,
            "filtration has the wrong rank");
    Weight sorted = F.jumps;
    std::sort(sorted.rbegin(), sorted.rend());
    require(sorted == mu[k], ErrorKind::FiltrationTypeMismatch,
            "filtration type " + weight_to_string(sorted) + " differs from " + weight_to_string(mu[k]));
    require(determinant(F.basis) != 0, ErrorKind::FiltrationTypeMismatch, "filtration basis is not a basis");
    const QPoly lin = qpoly_linear(pis[k]);
    QPolyMatrix g = qpoly_constant_matrix(F.basis);
    for (std::size_t j = 0; j < d; ++j) {
      const long ex = F.jumps[j] + n[k];
      require(ex >= 0, ErrorKind::PreconditionViolated, "clearing exponent too small for a negative jump");
      const QPoly f = lin.pow(static_cast<std::size_t>(ex));
      for (std::size_t i = 0; i < d; ++i) g(i, j) = g(i, j) * f;
    }
    // Away from π_k the factor is (u − π)^{-slack} times the standard lattice, which
    // contains every other factor there.
    std::vector<long> denom(pis.size(), slack);
    denom[k] = n[k];
    GenericLattice Lk(pis, std::move(g), std::move(denom));
    acc = acc ? lattice_intersection(*acc, Lk) : Lk;
  }
  return *acc;
}

// ---------------------------------------------------------------------------
// ∇-cells

struct NablaCell {
  Weight lambda;
  long e = 1;
  long p = 2;
  /// (i, j, k): the coefficient of u^k in the entry a_ij, i < j, is free.
  std::vector<std::array<long, 3>> free_parameters;
  long dimension = 0;
};

/// Dimension of the ∇-locus in the cell of E_λ. The coordinate a_ij (i<j, deg < λ_i − λ_j)
/// must satisfy ∇(a_ij) + (terms in earlier coordinates) ≡ 0 mod u^{λ_i−λ_j−e+1}; the
/// coefficient of u^k is killed by k·a_k = 0 unless p | k or k is past the modulus.
/// Entries are processed by increasing j − i; at each step the constraint is affine in
/// a_ij with this linear part, and it is solvable within the bound.
inline NablaCell nabla_cell_dimension(const Weight& lambda, long e, long p) {
  require(is_dominant(lambda), ErrorKind::NonDominant, "cell weight must be dominant");
  require(e >= 1 && p >= 2, ErrorKind::PreconditionViolated, "bad cell parameters");
  require(lambda.front() - lambda.back() <= e + p - 1, ErrorKind::BoundViolated,
          "gap exceeds e+p-1: antiderivatives need not exist");
  NablaCell cell{lambda, e, p, {}, 0};
  const std::size_t d = lambda.size();
  for (std::size_t diag = 1; diag < d; ++diag)
    for (std::size_t i = 0; i + diag < d; ++i) {
      const std::size_t j = i + diag;
      const long gap = lambda[i] - lambda[j];
      for (long k = 0; k < gap; ++k)
        if (k % p == 0 || k >= gap - e + 1)
          cell.free_parameters.push_back({static_cast<long>(i), static_cast<long>(j), k});
    }
  cell.dimension = static_cast<long>(cell.free_parameters.size());
  return cell;
}

/// The lattice g · E_λ over F_p[[u]] with g upper unipotent, g_ij = a_ij(u).
/// `coeffs(i, j)` lists the coefficients of a_ij.
inline SpecialLattice cell_point_lattice(const Weight& lambda, long e, const PrimeField& f,
                                         const std::function<std::vector<std::uint64_t>(std::size_t, std::size_t)>& coeffs,
                                         std::size_t precision) {
  const std::size_t d = lambda.size();
  const long shift = std::max(0L, -lambda.back());
  FpSeriesMatrix g = series_identity(f, d, precision);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) g(i, j) = FpSeries(f, coeffs(i, j), precision);
  FpSeriesMatrix diag(d, d, FpSeries::zero(f, precision));
  for (std::size_t i = 0; i < d; ++i)
    diag(i, i) = FpSeries::monomial(f, static_cast<std::size_t>(lambda[i] + shift), precision);
  return {e, FpLaurentMatrix(g * diag, static_cast<std::size_t>(shift))};
}

// ---------------------------------------------------------------------------
// Ψ: based Breuil–Kisin matrices to lattices

/// u^{eh} C^{-1} integral.
inline bool bk_height_ok(const FpLaurentMatrix& C, long e, long h) {
  const FpLaurentMatrix q = C.inverse().shifted(e * h);
  require(q.absolute_precision() > 0, ErrorKind::PrecisionExhausted, "height undecidable at this precision");
  return q.is_integral();
}

/// The lattice spanned by C^{-1}.
inline SpecialLattice psi_lattice(const FpLaurentMatrix& C, long e, long h) {
  require(bk_height_ok(C, e, h), ErrorKind::HeightViolated, "E(u)^h C^{-1} is not integral");
  return {e, C.inverse()};
}

}  // namespace bmc

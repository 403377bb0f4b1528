#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bmcycles/errors.hpp"
#include "bmcycles/grassmannian.hpp"
#include "bmcycles/rings/laurent_series_matrix.hpp"

namespace bmc {

/// Frobenius matrix C over F_p((u)) with u^{eh} C^{-1} integral.
struct BKMatrix {
  FpLaurentMatrix C;
  long e = 1;
  long h = 1;

  std::size_t precision() const { return C.numerator_precision(); }
  long p() const { return static_cast<long>(C.field().p); }
};

inline bool height_check(const BKMatrix& bk) { return bk.C.is_integral() && bk_height_ok(bk.C, bk.e, bk.h); }

/// Entrywise u -> u^p, capped at the working modulus.
inline FpLaurentMatrix matrix_phi(const FpLaurentMatrix& x, std::size_t working_modulus) {
  return x.substitute_power(static_cast<std::size_t>(x.field().p), working_modulus);
}

/// X integral with X ≡ 1 mod u^N (decided within precision).
inline bool in_congruence_subgroup(const FpLaurentMatrix& x, std::size_t N) {
  if (!x.is_integral()) return false;
  const FpLaurentMatrix diff = x - FpLaurentMatrix::identity(x.field(), x.dim(), x.numerator_precision());
  for (const auto& s : diff.numerator().data()) {
    if (s.precision() < N) return false;
    for (std::size_t k = 0; k < N; ++k)
      if (!s.field().is_zero(s.coeff(k))) return false;
  }
  return true;
}

/// C -> g^{-1} C φ(g).
inline BKMatrix phi_conjugate(const BKMatrix& bk, const FpLaurentMatrix& g) {
  require(g.is_integral() && g.determinant_numerator().is_unit(), ErrorKind::SingularMatrix,
          "conjugating matrix must be invertible over F_p[[u]]");
  return {g.inverse() * bk.C * matrix_phi(g, bk.precision()), bk.e, bk.h};
}

/// (p^n − 1)N − ((p−1)N − 1)(1 + p + ... + p^{n−1}) = 1 + p + ... + p^{n−1}.
inline bool convergence_ledger_identity(long p, long N, long n) {
  Integer geom = 0, pn = 1;
  for (long i = 0; i < n; ++i) {
    geom += pn;
    pn *= p;
  }
  return (pn - 1) * N - ((p - 1) * N - 1) * geom == geom;
}

struct TorsorSolution {
  FpLaurentMatrix g0;
  long iterations = 0;
  /// Absolute precision of g0 after the last step.
  long achievable_precision = 0;
  /// Smallest valuation of g0^{-1} C φ(g0) − gC among entries known to be nonzero; nullopt if it vanishes.
  std::optional<std::size_t> residual_valuation;
  long residual_precision = 0;
};

inline long ceil_log(long base, long x) {
  long k = 0, v = 1;
  while (v < x) {
    v *= base;
    ++k;
  }
  return k;
}

/// g0 ∈ U_N with g0^{-1} C φ(g0) = gC, as the limit of x -> C φ(x) C^{-1} g^{-1}
/// started at 1 (or at `start`). From 1 the n-th iterate is I_n J_n^{-1}.
inline TorsorSolution torsor_solve(const BKMatrix& bk, const FpLaurentMatrix& g, std::size_t N,
                                   std::optional<FpLaurentMatrix> start = std::nullopt) {
  const long p = bk.p();
  require(bk.e * bk.h <= (p - 1) * static_cast<long>(N) - 1, ErrorKind::ConvergenceConditionViolated,
          "eh = " + std::to_string(bk.e * bk.h) + " exceeds (p-1)N-1 = " + std::to_string((p - 1) * static_cast<long>(N) - 1));
  require(in_congruence_subgroup(g, N), ErrorKind::PreconditionViolated, "g is not congruent to 1 mod u^N");
  const std::size_t M = bk.precision();
  const FpLaurentMatrix Cinv = bk.C.inverse();
  const FpLaurentMatrix step_right = Cinv * g.inverse();
  FpLaurentMatrix x = start ? *start : FpLaurentMatrix::identity(bk.C.field(), bk.C.dim(), M);
  if (start) require(in_congruence_subgroup(x, N), ErrorKind::PreconditionViolated, "start is not in U_N");
  const long cap = ceil_log(p, static_cast<long>(M)) + 2;
  TorsorSolution sol;
  bool stable = false;
  for (long it = 1; it <= cap + 1 && !stable; ++it) {
    FpLaurentMatrix next = bk.C * matrix_phi(x, M) * step_right;
    require(next.is_integral(), ErrorKind::NonIntegralLimit,
            "Laurent denominators failed to cancel at iteration " + std::to_string(it) + ": " + next.to_string());
    stable = next == x;
    x = std::move(next);
    sol.iterations = it;
  }
  require(stable, ErrorKind::NonIntegralLimit, "iteration did not stabilize within the cap");
  require(in_congruence_subgroup(x, N), ErrorKind::NonIntegralLimit, "limit is not congruent to 1 mod u^N");
  sol.g0 = x;
  sol.achievable_precision = x.absolute_precision();
  const FpLaurentMatrix residual = x.inverse() * bk.C * matrix_phi(x, M) - g * bk.C;
  sol.residual_precision = residual.absolute_precision();
  // Residual is u^{-k} R; it vanishes iff R is zero to precision.
  std::optional<std::size_t> v;
  for (const auto& s : residual.numerator().data())
    if (auto sv = s.valuation()) v = v ? std::min(*v, *sv) : *sv;
  sol.residual_valuation = v;
  return sol;
}

/// g = g0^{-1} C φ(g0) C^{-1}, asserted to lie in U_N.
inline FpLaurentMatrix inverse_direction_check(const BKMatrix& bk, const FpLaurentMatrix& g0, std::size_t N) {
  const FpLaurentMatrix g = g0.inverse() * bk.C * matrix_phi(g0, bk.precision()) * bk.C.inverse();
  require(in_congruence_subgroup(g, N), ErrorKind::IntegralityViolated,
          "g0^{-1} C phi(g0) C^{-1} is not congruent to 1 mod u^N: " + g.to_string());
  return g;
}

}  // namespace bmc

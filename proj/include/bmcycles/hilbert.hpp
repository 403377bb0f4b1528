#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bmcycles/characters.hpp"
#include "bmcycles/errors.hpp"
#include "bmcycles/weights.hpp"

namespace bmc {

enum class DimShift { none, minus_rho };

/// ∏_i dim H^0(nμ_i) or ∏_i dim H^0(nμ_i − ρ), each read off the exact character.
inline Integer dim_product(const std::vector<Weight>& mus, long n, DimShift shift) {
  require(!mus.empty(), ErrorKind::PreconditionViolated, "empty weight list");
  const std::size_t d = mus[0].size();
  Integer r = 1;
  for (const auto& mu : mus) {
    Weight w = weight_scaled(mu, n);
    if (shift == DimShift::minus_rho) w = weight_sub(w, rho(d));
    r *= character_dim(w);
    if (r == 0) break;
  }
  return r;
}

/// Right-hand side Σ m(λ) dim H^0(n(λ+ρ) + s) dim H^0(nρ + s)^{e−1}, s = 0 or −ρ.
inline Integer weighted_lift_dims(const Multiplicities& mult, std::size_t e, std::size_t d, long n, DimShift shift) {
  const Weight r = rho(d);
  const Weight s = shift == DimShift::minus_rho ? r : Weight(d, 0);
  const Integer other = character_dim(weight_sub(weight_scaled(r, n), s));
  Integer other_pow = 1;
  for (std::size_t k = 1; k < e; ++k) other_pow *= other;
  Integer total = 0;
  for (const auto& [lambda, m] : mult)
    total += m * character_dim(weight_sub(weight_scaled(weight_add(lambda, r), n), s)) * other_pow;
  return total;
}

struct ShiftedIdentityResult {
  bool pass = true;
  std::optional<long> first_failure;
  std::vector<std::pair<Integer, Integer>> sides;  // (lhs, rhs) for n = 1..n_max
};

/// Checks ∏ dim H^0(nμ_i − ρ) = Σ m dim H^0(n(λ+ρ)−ρ) dim H^0(nρ−ρ)^{e−1} for n = 1..n_max.
inline ShiftedIdentityResult shifted_identity_check(const std::vector<Weight>& mus, const Multiplicities& mult,
                                                    long n_max) {
  ShiftedIdentityResult r;
  const std::size_t d = mus.at(0).size();
  for (long n = 1; n <= n_max; ++n) {
    const Integer lhs = dim_product(mus, n, DimShift::minus_rho);
    const Integer rhs = weighted_lift_dims(mult, mus.size(), d, n, DimShift::minus_rho);
    r.sides.emplace_back(lhs, rhs);
    if (lhs != rhs && r.pass) {
      r.pass = false;
      r.first_failure = n;
    }
  }
  return r;
}

/// D(n) = ∏ dim H^0(nμ_i) − Σ m dim H^0(n(λ+ρ)) dim H^0(nρ)^{e−1}.
inline Integer defect_value(const std::vector<Weight>& mus, const Multiplicities& mult, long n) {
  const std::size_t d = mus.at(0).size();
  return dim_product(mus, n, DimShift::none) - weighted_lift_dims(mult, mus.size(), d, n, DimShift::none);
}

struct DefectSeries {
  std::vector<std::pair<long, Integer>> values;
  long claimed_degree_bound = 0;
  /// Largest k whose k-th finite difference is not identically zero; -1 for the zero sequence.
  long degree = -1;
  /// The (degree+1)-th differences were available and vanished, so the data fits a polynomial.
  bool polynomial_confirmed = false;
  bool pass = false;
};

/// Highest order k with a nonzero k-th finite difference on the samples, and
/// whether the next order could be checked.
inline std::pair<long, bool> finite_difference_degree(const std::vector<Integer>& samples) {
  std::vector<Integer> row = samples;
  long degree = -1;
  for (long k = 0; !row.empty(); ++k) {
    bool nonzero = false;
    for (const auto& x : row) nonzero = nonzero || x != 0;
    if (nonzero) degree = k;
    std::vector<Integer> next;
    for (std::size_t i = 0; i + 1 < row.size(); ++i) next.push_back(row[i + 1] - row[i]);
    row = std::move(next);
  }
  const bool confirmed = degree + 1 < static_cast<long>(samples.size());
  return {degree, confirmed};
}

inline std::vector<long> default_window(long bound) {
  std::vector<long> ns;
  for (long n = 1; n <= bound + 4; ++n) ns.push_back(n);
  return ns;
}

inline DefectSeries defect_degree(const std::vector<Weight>& mus, const Multiplicities& mult,
                                  std::vector<long> n_range = {}) {
  DefectSeries s;
  for (const auto& w : mus) s.claimed_degree_bound += flag_dim(w);
  if (n_range.empty()) n_range = default_window(s.claimed_degree_bound);
  require(static_cast<long>(n_range.size()) >= s.claimed_degree_bound + 3, ErrorKind::WindowTooShort,
          "window of " + std::to_string(n_range.size()) + " samples, need bound + 3");
  for (std::size_t i = 1; i < n_range.size(); ++i)
    require(n_range[i] == n_range[i - 1] + 1, ErrorKind::PreconditionViolated, "window must be consecutive");
  std::vector<Integer> samples;
  for (long n : n_range) {
    samples.push_back(defect_value(mus, mult, n));
    s.values.emplace_back(n, samples.back());
  }
  std::tie(s.degree, s.polynomial_confirmed) = finite_difference_degree(samples);
  s.pass = s.polynomial_confirmed && s.degree < s.claimed_degree_bound;
  return s;
}

struct EqualityForcingResult {
  bool detected = false;
  DefectSeries defect;
};

/// Adds a nonnegative overcount to the multiplicities; the defect degree then
/// reaches Σ flag_dim, which is what rules the overcount out.
inline EqualityForcingResult equality_forcing_check(const std::vector<Weight>& mus, const Multiplicities& mult,
                                                    const Multiplicities& overcount, std::vector<long> n_range = {}) {
  bool some = false;
  for (const auto& [w, x] : overcount) {
    require(x >= 0, ErrorKind::PreconditionViolated, "overcount must be nonnegative");
    some = some || x > 0;
  }
  require(some, ErrorKind::PreconditionViolated, "overcount is zero");
  Multiplicities merged = mult;
  for (const auto& [w, x] : overcount) merged[w] += x;
  EqualityForcingResult r;
  r.defect = defect_degree(mus, merged, std::move(n_range));
  r.detected = r.defect.degree >= r.defect.claimed_degree_bound;
  return r;
}

}  // namespace bmc

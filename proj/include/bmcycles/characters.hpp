#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

#include "bmcycles/errors.hpp"
#include "bmcycles/rings/field.hpp"
#include "bmcycles/rings/laurent_poly.hpp"
#include "bmcycles/weights.hpp"

namespace bmc {

/// Elements of Z[X(T)]; symmetric ones are characters, antisymmetric ones alternating sums.
using Character = LaurentPoly;
using Multiplicities = std::map<Weight, Integer>;

namespace detail {
// Sign of the permutation, by counting inversions.
inline int permutation_sign(const std::vector<std::size_t>& perm) {
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s = -s;
  return s;
}
}  // namespace detail

/// A(λ) = Σ_w det(w) e(wλ).
inline LaurentPoly alternating_sum(const Weight& lambda) {
  const std::size_t d = lambda.size();
  LaurentPoly a(d);
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  Exponent e(d);
  do {
    for (std::size_t i = 0; i < d; ++i) e[i] = lambda[perm[i]];
    a.add_term(e, detail::permutation_sign(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return a;
}

/// ch H^0(ν) = A(ν+ρ)/A(ρ) for any ν; for non-dominant ν this is the virtual
/// character ±ch H^0(w·ν), or 0.
inline Character virtual_weyl_character(const Weight& nu) {
  const std::size_t d = nu.size();
  const LaurentPoly num = alternating_sum(weight_add(nu, rho(d)));
  if (num.is_zero()) return LaurentPoly(d);
  return num.divide_exact(alternating_sum(rho(d)));
}

inline Character weyl_character(const Weight& lambda) {
  require(is_dominant(lambda), ErrorKind::NonDominant, "Weyl character of non-dominant " + weight_to_string(lambda));
  return virtual_weyl_character(lambda);
}

/// ∏_{i<j} (λ_i − λ_j + j − i)/(j − i). Valid for any λ, where it is the
/// virtual dimension (sign included, 0 on walls).
inline Integer weyl_dim(const Weight& lambda) {
  Rational r = 1;
  const std::size_t d = lambda.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      r *= Rational(lambda[i] - lambda[j] + static_cast<long>(j - i), static_cast<long>(j - i));
  require(boost::multiprecision::denominator(r) == 1, ErrorKind::InexactDivision, "non-integral Weyl dimension");
  return boost::multiprecision::numerator(r);
}

/// Dimension computed from the exact character A(ν+ρ)/A(ρ).
inline Integer character_dim(const Weight& nu) { return virtual_weyl_character(nu).coefficient_sum(); }

inline Character character_product(const std::vector<Character>& factors, std::size_t d) {
  Character r = LaurentPoly::one(d);
  for (const auto& c : factors) r *= c;
  return r;
}

/// Writes a symmetric ch as Σ m(λ) ch H^0(λ) by peeling the lexicographically
/// largest dominant exponent.
inline Multiplicities decompose(const Character& ch) {
  require(ch.is_symmetric(), ErrorKind::PreconditionViolated, "decompose needs a symmetric polynomial");
  Multiplicities m;
  Character rest = ch;
  std::size_t budget = 4 * ch.size() + 64;
  while (!rest.is_zero()) {
    require(budget-- > 0, ErrorKind::NonTerminating, "peeling exceeded its iteration budget");
    // The lex-largest exponent of a symmetric polynomial is dominant.
    const Exponent top = rest.leading_exponent();
    require(is_dominant(top), ErrorKind::NonTerminating, "leading exponent not dominant: input not symmetric");
    const Integer c = rest.coeff(top);
    m[top] += c;
    rest -= weyl_character(top).scaled(c);
  }
  for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
  return m;
}

/// Σ m(λ) ch H^0(λ).
inline Character recompose(const Multiplicities& m, std::size_t d) {
  Character r(d);
  for (const auto& [w, c] : m) r += weyl_character(w).scaled(c);
  return r;
}

inline Character scale_exponents(const Character& ch, long n) {
  require(n >= 1, ErrorKind::PreconditionViolated, "scale factor must be positive");
  return ch.scale_exponents(n);
}

}  // namespace bmc

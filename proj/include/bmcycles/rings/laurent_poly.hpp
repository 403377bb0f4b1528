#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bmcycles/errors.hpp"
#include "bmcycles/rings/field.hpp"

namespace bmc {

using Exponent = std::vector<long>;

/// Multivariate Laurent polynomial with arbitrary-precision integer
/// coefficients, i.e. an element of the group ring Z[Z^d]. Terms are kept in a
/// map ordered lexicographically on exponents, with no zero coefficients.
class LaurentPoly {
 public:
  using Terms = std::map<Exponent, Integer>;

  explicit LaurentPoly(std::size_t rank = 0) : rank_(rank) {}

  static LaurentPoly monomial(const Exponent& e, const Integer& c = 1) {
    LaurentPoly p(e.size());
    p.add_term(e, c);
    return p;
  }
  static LaurentPoly one(std::size_t rank) { return monomial(Exponent(rank, 0)); }

  std::size_t rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Integer coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(const Exponent& e, const Integer& c) {
    require(e.size() == rank_, ErrorKind::RankMismatch, "exponent length differs from rank");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Sum of all coefficients: the dimension map Z[X(T)] -> Z.
  Integer coefficient_sum() const {
    Integer s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  /// Lexicographically largest exponent; requires nonzero.
  const Exponent& leading_exponent() const {
    require(!is_zero(), ErrorKind::PreconditionViolated, "leading exponent of zero");
    return terms_.rbegin()->first;
  }
  const Exponent& trailing_exponent() const {
    require(!is_zero(), ErrorKind::PreconditionViolated, "trailing exponent of zero");
    return terms_.begin()->first;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    check_rank(a, b);
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    check_rank(a, b);
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    check_rank(a, b);
    LaurentPoly r(a.rank_);
    Exponent sum(a.rank_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.rank_; ++i) sum[i] = ea[i] + eb[i];
        r.add_term(sum, ca * cb);
      }
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const Integer& c) const {
    if (c == 0) return LaurentPoly(rank_);
    LaurentPoly r = *this;
    for (auto& [e, x] : r.terms_) x *= c;
    return r;
  }

  LaurentPoly pow(unsigned n) const {
    LaurentPoly r = one(rank_);
    for (unsigned i = 0; i < n; ++i) r *= *this;
    return r;
  }

  /// Image under the endomorphism induced by multiplication by n on Z^d.
  LaurentPoly scale_exponents(long n) const {
    LaurentPoly r(rank_);
    for (const auto& [e, c] : terms_) {
      Exponent s = e;
      for (auto& x : s) x *= n;
      r.add_term(s, c);
    }
    return r;
  }

  /// Apply a coordinate permutation: exponent e maps to e' with e'[perm[i]] = e[i].
  LaurentPoly permuted(const std::vector<std::size_t>& perm) const {
    LaurentPoly r(rank_);
    Exponent s(rank_);
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < rank_; ++i) s[perm[i]] = e[i];
      r.add_term(s, c);
    }
    return r;
  }

  /// Exact division. Throws InexactDivision when `divisor` does not divide.
  LaurentPoly divide_exact(const LaurentPoly& divisor) const {
    check_rank(*this, divisor);
    require(!divisor.is_zero(), ErrorKind::InexactDivision, "division by zero Laurent polynomial");
    if (is_zero()) return LaurentPoly(rank_);
    // Every quotient term lies lex-between trailing(f)-trailing(g) and
    // leading(f)-leading(g); leaving that window means the division is inexact.
    const Exponent& lg = divisor.leading_exponent();
    const Integer& lc = divisor.terms_.rbegin()->second;
    Exponent floor = trailing_exponent();
    for (std::size_t i = 0; i < rank_; ++i) floor[i] -= divisor.trailing_exponent()[i];

    LaurentPoly quotient(rank_), rem = *this;
    std::size_t budget = 4 * (size() + 1) * (divisor.size() + 1) + 1024;
    while (!rem.is_zero()) {
      require(budget-- > 0, ErrorKind::InexactDivision, "division did not terminate");
      const auto& [le, lcoef] = *rem.terms_.rbegin();
      Exponent qe = le;
      for (std::size_t i = 0; i < rank_; ++i) qe[i] -= lg[i];
      require(!(qe < floor), ErrorKind::InexactDivision, "remainder escaped the quotient window");
      require(lcoef % lc == 0, ErrorKind::InexactDivision, "coefficient not divisible");
      const Integer qc = lcoef / lc;
      quotient.add_term(qe, qc);
      rem -= monomial(qe, qc) * divisor;
    }
    return quotient;
  }

  bool is_symmetric() const {
    std::vector<std::size_t> perm(rank_);
    for (std::size_t i = 0; i + 1 < rank_; ++i) {
      for (std::size_t k = 0; k < rank_; ++k) perm[k] = k;
      std::swap(perm[i], perm[i + 1]);
      if (!(permuted(perm) == *this)) return false;
    }
    return true;
  }
  bool is_antisymmetric() const {
    std::vector<std::size_t> perm(rank_);
    for (std::size_t i = 0; i + 1 < rank_; ++i) {
      for (std::size_t k = 0; k < rank_; ++k) perm[k] = k;
      std::swap(perm[i], perm[i + 1]);
      if (!(permuted(perm) == -*this)) return false;
    }
    return true;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      if (it->second != 1) s += it->second.str() + "*";
      s += "e(";
      for (std::size_t i = 0; i < rank_; ++i) s += (i ? "," : "") + std::to_string(it->first[i]);
      s += ")";
    }
    return s;
  }

 private:
  static void check_rank(const LaurentPoly& a, const LaurentPoly& b) {
    require(a.rank_ == b.rank_, ErrorKind::RankMismatch,
            "rank mismatch: " + std::to_string(a.rank_) + " vs " + std::to_string(b.rank_));
  }

  std::size_t rank_;
  Terms terms_;
};

inline LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

}  // namespace bmc

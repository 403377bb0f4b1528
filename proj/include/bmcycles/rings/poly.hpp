#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bmcycles/errors.hpp"
#include "bmcycles/rings/field.hpp"
#include "bmcycles/rings/series.hpp"

namespace bmc {

/// Exact univariate polynomial over a field; no trailing zero coefficients.
template <class Field>
class Poly {
 public:
  using value_type = typename Field::value_type;

  Poly() = default;
  explicit Poly(Field field) : field_(std::move(field)) {}
  Poly(Field field, std::vector<value_type> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) { trim(); }

  static Poly constant(const Field& f, const value_type& c) { return Poly(f, {c}); }
  static Poly one(const Field& f) { return constant(f, f.one()); }
  static Poly zero(const Field& f) { return Poly(f); }
  static Poly monomial(const Field& f, std::size_t k, const value_type& c) {
    std::vector<value_type> v(k + 1, f.zero());
    v[k] = c;
    return Poly(f, std::move(v));
  }
  /// u - c
  static Poly linear(const Field& f, const value_type& c) { return Poly(f, {f.neg(c), f.one()}); }

  const Field& field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<value_type>& coeffs() const { return coeffs_; }
  value_type coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : field_.zero(); }
  value_type leading() const { return coeffs_.empty() ? field_.zero() : coeffs_.back(); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = field_.neg(c);
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<value_type> v(std::max(a.coeffs_.size(), b.coeffs_.size()), a.field_.zero());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.field_.add(a.coeff(k), b.coeff(k));
    return Poly(a.field_, std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<value_type> v(std::max(a.coeffs_.size(), b.coeffs_.size()), a.field_.zero());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.field_.sub(a.coeff(k), b.coeff(k));
    return Poly(a.field_, std::move(v));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    std::vector<value_type> v(a.coeffs_.size() + b.coeffs_.size() - 1, a.field_.zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        v[i + j] = a.field_.add(v[i + j], a.field_.mul(a.coeffs_[i], b.coeffs_[j]));
    return Poly(a.field_, std::move(v));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const value_type& c) const {
    Poly r = *this;
    for (auto& x : r.coeffs_) x = field_.mul(x, c);
    r.trim();
    return r;
  }
  Poly pow(std::size_t n) const {
    Poly r = one(field_);
    for (std::size_t i = 0; i < n; ++i) r *= *this;
    return r;
  }

  /// Euclidean division: *this = q*b + r with deg r < deg b.
  std::pair<Poly, Poly> divmod(const Poly& b) const {
    require(!b.is_zero(), ErrorKind::InexactDivision, "polynomial division by zero");
    Poly q(field_), r = *this;
    const value_type linv = field_.inv(b.leading());
    while (!r.is_zero() && r.degree() >= b.degree()) {
      const std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
      const value_type c = field_.mul(r.leading(), linv);
      Poly t = monomial(field_, shift, c);
      q += t;
      r -= t * b;
    }
    return {q, r};
  }
  bool divisible_by(const Poly& b) const { return divmod(b).second.is_zero(); }
  Poly exact_div(const Poly& b) const {
    auto [q, r] = divmod(b);
    require(r.is_zero(), ErrorKind::InexactDivision, "polynomial not divisible");
    return q;
  }

  value_type eval(const value_type& x) const {
    value_type acc = field_.zero();
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = field_.add(field_.mul(acc, x), coeffs_[k]);
    return acc;
  }

  /// p(t + c) as a polynomial in t.
  Poly taylor_shift(const value_type& c) const {
    Poly r(field_);
    const Poly lin(field_, {c, field_.one()});
    for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * lin + constant(field_, coeffs_[k]);
    return r;
  }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return Poly(field_);
    std::vector<value_type> v(coeffs_.size() - 1, field_.zero());
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      v[k - 1] = field_.mul(field_.from_int(static_cast<long long>(k)), coeffs_[k]);
    return Poly(field_, std::move(v));
  }
  /// u d/du
  Poly nabla() const {
    std::vector<value_type> v = coeffs_;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = field_.mul(field_.from_int(static_cast<long long>(k)), v[k]);
    return Poly(field_, std::move(v));
  }

  /// Multiplicity of the root c.
  std::size_t root_order(const value_type& c) const {
    require(!is_zero(), ErrorKind::IndeterminateValuation, "root order of the zero polynomial");
    const Poly t = taylor_shift(c);
    std::size_t k = 0;
    while (field_.is_zero(t.coeffs_[k])) ++k;
    return k;
  }

  Series<Field> to_series(std::size_t precision) const {
    std::vector<value_type> v(precision, field_.zero());
    for (std::size_t k = 0; k < coeffs_.size() && k < precision; ++k) v[k] = coeffs_[k];
    return Series<Field>(field_, std::move(v), precision);
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k)
      if (!a.field_.equal(a.coeffs_[k], b.coeffs_[k])) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (field_.is_zero(coeffs_[k])) continue;
      if (!s.empty()) s += " + ";
      s += field_.to_string(coeffs_[k]);
      if (k > 0) s += "*u^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && field_.is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  Field field_{};
  std::vector<value_type> coeffs_;
};

template <class Field>
Poly<Field> poly_gcd(Poly<Field> a, Poly<Field> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a = a.scaled(a.field().inv(a.leading()));
  return a;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic (or zero).
template <class Field>
std::tuple<Poly<Field>, Poly<Field>, Poly<Field>> poly_xgcd(const Poly<Field>& a, const Poly<Field>& b) {
  const Field& f = a.field();
  Poly<Field> r0 = a, r1 = b;
  Poly<Field> s0 = Poly<Field>::one(f), s1 = Poly<Field>::zero(f);
  Poly<Field> t0 = Poly<Field>::zero(f), t1 = Poly<Field>::one(f);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (!r0.is_zero()) {
    const auto li = f.inv(r0.leading());
    r0 = r0.scaled(li);
    s0 = s0.scaled(li);
    t0 = t0.scaled(li);
  }
  return {r0, s0, t0};
}

using QPoly = Poly<RationalField>;

}  // namespace bmc

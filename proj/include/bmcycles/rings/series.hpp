#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bmcycles/errors.hpp"
#include "bmcycles/rings/field.hpp"

namespace bmc {

/// A power series over a field known modulo u^precision.
///
/// Coefficients 0..precision-1 are stored; everything at or above u^precision
/// is unknown. Binary operations return the smaller of the two input
/// precisions, and equality only compares the commonly known coefficients.
template <class Field>
class Series {
 public:
  using value_type = typename Field::value_type;

  Series() = default;
  Series(Field field, std::size_t precision)
      : field_(std::move(field)), coeffs_(precision, field_.zero()) {}
  Series(Field field, std::vector<value_type> coeffs, std::size_t precision)
      : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    coeffs_.resize(precision, field_.zero());
  }

  static Series constant(const Field& f, const value_type& c, std::size_t precision) {
    Series s(f, precision);
    if (precision > 0) s.coeffs_[0] = c;
    return s;
  }
  static Series monomial(const Field& f, std::size_t k, std::size_t precision) {
    Series s(f, precision);
    if (k < precision) s.coeffs_[k] = f.one();
    return s;
  }
  static Series one(const Field& f, std::size_t precision) { return constant(f, f.one(), precision); }
  static Series zero(const Field& f, std::size_t precision) { return Series(f, precision); }

  const Field& field() const { return field_; }
  std::size_t precision() const { return coeffs_.size(); }
  const std::vector<value_type>& coeffs() const { return coeffs_; }
  value_type coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : field_.zero(); }
  void set_coeff(std::size_t k, const value_type& c) {
    if (k < coeffs_.size()) coeffs_[k] = c;
  }

  /// Index of the first nonzero known coefficient; nullopt when zero to precision.
  std::optional<std::size_t> valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!field_.is_zero(coeffs_[k])) return k;
    return std::nullopt;
  }
  bool is_zero() const { return !valuation().has_value(); }
  bool is_unit() const { return !coeffs_.empty() && !field_.is_zero(coeffs_[0]); }

  Series truncated(std::size_t precision) const {
    Series r = *this;
    r.coeffs_.resize(std::min(precision, coeffs_.size()));
    return r;
  }

  Series operator-() const {
    Series r = *this;
    for (auto& c : r.coeffs_) c = field_.neg(c);
    return r;
  }
  friend Series operator+(const Series& a, const Series& b) {
    const std::size_t m = std::min(a.precision(), b.precision());
    Series r(a.field_, m);
    for (std::size_t k = 0; k < m; ++k) r.coeffs_[k] = a.field_.add(a.coeffs_[k], b.coeffs_[k]);
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    const std::size_t m = std::min(a.precision(), b.precision());
    Series r(a.field_, m);
    for (std::size_t k = 0; k < m; ++k) r.coeffs_[k] = a.field_.sub(a.coeffs_[k], b.coeffs_[k]);
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    const std::size_t m = std::min(a.precision(), b.precision());
    Series r(a.field_, m);
    const Field& f = a.field_;
    for (std::size_t i = 0; i < m; ++i) {
      if (f.is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; i + j < m; ++j)
        r.coeffs_[i + j] = f.add(r.coeffs_[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
    }
    return r;
  }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  Series scaled(const value_type& c) const {
    Series r = *this;
    for (auto& x : r.coeffs_) x = field_.mul(x, c);
    return r;
  }

  /// u^k * s; the k new low coefficients are known zeros, so precision grows by k.
  Series shifted_up(std::size_t k) const {
    Series r(field_, precision() + k);
    for (std::size_t i = 0; i < precision(); ++i) r.coeffs_[i + k] = coeffs_[i];
    return r;
  }

  /// s / u^k; requires the first k coefficients to vanish.
  Series shifted_down(std::size_t k) const {
    require(k <= precision(), ErrorKind::PrecisionExhausted, "division by u^k beyond precision");
    for (std::size_t i = 0; i < k; ++i)
      require(field_.is_zero(coeffs_[i]), ErrorKind::InexactDivision, "series not divisible by u^k");
    return Series(field_, std::vector<value_type>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()),
                  precision() - k);
  }

  /// Multiplicative inverse of a unit, to the same precision.
  Series inverse() const {
    require(is_unit(), ErrorKind::SingularMatrix, "series inverse of a non-unit");
    const std::size_t m = precision();
    Series r(field_, m);
    const value_type c0inv = field_.inv(coeffs_[0]);
    r.coeffs_[0] = c0inv;
    for (std::size_t k = 1; k < m; ++k) {
      value_type acc = field_.zero();
      for (std::size_t j = 1; j <= k; ++j) acc = field_.add(acc, field_.mul(coeffs_[j], r.coeffs_[k - j]));
      r.coeffs_[k] = field_.neg(field_.mul(acc, c0inv));
    }
    return r;
  }

  /// The Frobenius-type substitution u -> u^q. The result is known to q*precision,
  /// capped at working_modulus when one is given.
  Series substitute_power(std::size_t q, std::optional<std::size_t> working_modulus = std::nullopt) const {
    std::size_t m = precision() * q;
    if (working_modulus) m = std::min(m, *working_modulus);
    Series r(field_, m);
    for (std::size_t i = 0; i < precision() && i * q < m; ++i) r.coeffs_[i * q] = coeffs_[i];
    return r;
  }

  /// The derivation u d/du.
  Series nabla() const {
    Series r = *this;
    for (std::size_t k = 0; k < precision(); ++k)
      r.coeffs_[k] = field_.mul(field_.from_int(static_cast<long long>(k % (1ULL << 62))), coeffs_[k]);
    return r;
  }

  /// Equality of the commonly known coefficients.
  friend bool operator==(const Series& a, const Series& b) {
    const std::size_t m = std::min(a.precision(), b.precision());
    for (std::size_t k = 0; k < m; ++k)
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
    if (s.empty()) s = "0";
    return s + " + O(u^" + std::to_string(coeffs_.size()) + ")";
  }

 private:
  Field field_{};
  std::vector<value_type> coeffs_;
};

template <class Field>
void ensure_precision(const Series<Field>& s, std::size_t floor, const std::string& context) {
  require(s.precision() >= floor, ErrorKind::PrecisionExhausted,
          context + ": precision " + std::to_string(s.precision()) + " below floor " + std::to_string(floor));
}

using FpSeries = Series<PrimeField>;

/// Frobenius on F_p[[u]]: coefficients are fixed, u -> u^p.
inline FpSeries series_phi(const FpSeries& s, std::optional<std::size_t> working_modulus = std::nullopt) {
  return s.substitute_power(static_cast<std::size_t>(s.field().p), working_modulus);
}

}  // namespace bmc

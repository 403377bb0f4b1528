#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>

#include "bmcycles/errors.hpp"
#include "bmcycles/rings/matrix.hpp"
#include "bmcycles/rings/series.hpp"

namespace bmc {

template <class Field>
using SeriesMatrix = Matrix<Series<Field>>;

template <class Field>
SeriesMatrix<Field> series_identity(const Field& f, std::size_t d, std::size_t precision) {
  SeriesMatrix<Field> m(d, d, Series<Field>::zero(f, precision));
  for (std::size_t i = 0; i < d; ++i) m(i, i) = Series<Field>::one(f, precision);
  return m;
}

template <class Field>
std::size_t matrix_precision(const SeriesMatrix<Field>& m) {
  std::size_t p = m(0, 0).precision();
  for (const auto& s : m.data()) p = std::min(p, s.precision());
  return p;
}

/// Smallest valuation among the entries; nullopt if every entry is zero to precision.
template <class Field>
std::optional<std::size_t> matrix_valuation(const SeriesMatrix<Field>& m) {
  std::optional<std::size_t> v;
  for (const auto& s : m.data())
    if (auto sv = s.valuation()) v = v ? std::min(*v, *sv) : *sv;
  return v;
}

template <class Field>
SeriesMatrix<Field> matrix_truncated(const SeriesMatrix<Field>& m, std::size_t precision) {
  return m.map([&](const Series<Field>& s) { return s.truncated(precision); });
}

/// Exact scalar matrix over F[[u]]/u^M: entries become series of the given precision.
template <class Field>
SeriesMatrix<Field> matrix_scaled(const SeriesMatrix<Field>& m, const Series<Field>& c) {
  return m.map([&](const Series<Field>& s) { return s * c; });
}

/// A matrix u^{-k} * N over F((u)) with N known modulo u^M.
///
/// The canonical form divides out common powers of u while k > 0, so an
/// integral matrix always has k == 0. Absolute precision is M - k.
template <class Field>
class LaurentSeriesMatrix {
 public:
  LaurentSeriesMatrix() = default;
  explicit LaurentSeriesMatrix(SeriesMatrix<Field> numerator, std::size_t denom_exponent = 0)
      : num_(std::move(numerator)), denom_(denom_exponent) {
    require(num_.square() && num_.rows() > 0, ErrorKind::RankMismatch, "Laurent matrix must be square");
    normalize();
  }

  static LaurentSeriesMatrix identity(const Field& f, std::size_t d, std::size_t precision) {
    return LaurentSeriesMatrix(series_identity(f, d, precision));
  }

  std::size_t dim() const { return num_.rows(); }
  const Field& field() const { return num_(0, 0).field(); }
  const SeriesMatrix<Field>& numerator() const { return num_; }
  std::size_t denom_exponent() const { return denom_; }
  std::size_t numerator_precision() const { return matrix_precision(num_); }
  long absolute_precision() const { return static_cast<long>(numerator_precision()) - static_cast<long>(denom_); }
  bool is_integral() const { return denom_ == 0; }

  /// Integral numerator; throws if a denominator survives normalization.
  const SeriesMatrix<Field>& integral() const {
    require(denom_ == 0, ErrorKind::IntegralityViolated,
            "matrix has surviving denominator u^-" + std::to_string(denom_));
    return num_;
  }

  /// Multiply by u^k (k may be negative).
  LaurentSeriesMatrix shifted(long k) const {
    if (k >= 0) {
      const std::size_t up = static_cast<std::size_t>(k);
      if (up <= denom_) return LaurentSeriesMatrix(num_, denom_ - up);
      return LaurentSeriesMatrix(num_.map([&](const Series<Field>& s) { return s.shifted_up(up - denom_); }), 0);
    }
    return LaurentSeriesMatrix(num_, denom_ + static_cast<std::size_t>(-k));
  }

  friend LaurentSeriesMatrix operator*(const LaurentSeriesMatrix& a, const LaurentSeriesMatrix& b) {
    return LaurentSeriesMatrix(a.num_ * b.num_, a.denom_ + b.denom_);
  }
  friend LaurentSeriesMatrix operator+(const LaurentSeriesMatrix& a, const LaurentSeriesMatrix& b) {
    const std::size_t k = std::max(a.denom_, b.denom_);
    return LaurentSeriesMatrix(a.lifted_numerator(k) + b.lifted_numerator(k), k);
  }
  friend LaurentSeriesMatrix operator-(const LaurentSeriesMatrix& a, const LaurentSeriesMatrix& b) {
    const std::size_t k = std::max(a.denom_, b.denom_);
    return LaurentSeriesMatrix(a.lifted_numerator(k) - b.lifted_numerator(k), k);
  }

  /// Equality on the commonly known range.
  friend bool operator==(const LaurentSeriesMatrix& a, const LaurentSeriesMatrix& b) {
    const std::size_t k = std::max(a.denom_, b.denom_);
    return a.lifted_numerator(k) == b.lifted_numerator(k);
  }

  Series<Field> determinant_numerator() const { return determinant(num_); }

  /// Invertible over F((u)) iff det is nonzero within the known precision.
  bool determinant_is_unit() const { return determinant(num_).valuation().has_value(); }

  /// (u^-k N)^{-1} = u^{k-v} w^{-1} adj(N) where det N = u^v w, w a unit.
  /// The numerator of the result is known modulo u^{M-v}.
  LaurentSeriesMatrix inverse() const {
    const Series<Field> det = determinant(num_);
    const auto v = det.valuation();
    require(v.has_value(), ErrorKind::SingularMatrix, "determinant vanishes to precision");
    const Series<Field> w_inv = det.shifted_down(*v).inverse();
    const Series<Field> one = Series<Field>::one(field(), numerator_precision());
    SeriesMatrix<Field> adj = adjugate(num_, one);
    SeriesMatrix<Field> n = adj.map([&](const Series<Field>& s) { return s * w_inv; });
    return LaurentSeriesMatrix(std::move(n), 0).shifted(static_cast<long>(denom_) - static_cast<long>(*v));
  }

  /// Entrywise substitution u -> u^q; the denominator u^-k becomes u^{-kq}.
  LaurentSeriesMatrix substitute_power(std::size_t q, std::optional<std::size_t> working_modulus = std::nullopt) const {
    return LaurentSeriesMatrix(num_.map([&](const Series<Field>& s) { return s.substitute_power(q, working_modulus); }),
                               denom_ * q);
  }

  LaurentSeriesMatrix transposed() const { return LaurentSeriesMatrix(num_.transposed(), denom_); }

  LaurentSeriesMatrix truncated(std::size_t numerator_precision) const {
    return LaurentSeriesMatrix(matrix_truncated(num_, numerator_precision), denom_);
  }

  /// Entrywise u d/du: for u^-k N this is u^-k (nabla N - k N).
  LaurentSeriesMatrix nabla() const {
    const Field& f = field();
    const auto kk = f.from_int(static_cast<long long>(denom_));
    SeriesMatrix<Field> n = num_.map([&](const Series<Field>& s) { return s.nabla() - s.scaled(kk); });
    return LaurentSeriesMatrix(std::move(n), denom_);
  }

  std::string to_string() const {
    std::string s = "u^-" + std::to_string(denom_) + " * [";
    for (std::size_t i = 0; i < dim(); ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < dim(); ++j) s += (j ? ", " : "") + num_(i, j).to_string();
    }
    return s + "]";
  }

 private:
  SeriesMatrix<Field> lifted_numerator(std::size_t k) const {
    const std::size_t up = k - denom_;
    return num_.map([&](const Series<Field>& s) { return s.shifted_up(up); });
  }

  void normalize() {
    while (denom_ > 0) {
      bool divisible = true;
      for (const auto& s : num_.data()) {
        if (s.precision() == 0) { divisible = false; break; }
        const auto v = s.valuation();
        if (v && *v == 0) { divisible = false; break; }
      }
      if (!divisible) break;
      num_ = num_.map([](const Series<Field>& s) { return s.shifted_down(1); });
      --denom_;
    }
  }

  SeriesMatrix<Field> num_;
  std::size_t denom_ = 0;
};

using FpLaurentMatrix = LaurentSeriesMatrix<PrimeField>;
using FpSeriesMatrix = SeriesMatrix<PrimeField>;

}  // namespace bmc

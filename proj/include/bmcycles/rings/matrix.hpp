#pragma once

#include <cstddef>
#include <utility>
#include <string>
#include <vector>

#include "bmcycles/errors.hpp"

namespace bmc {

/// Dense row-major matrix over any ring-like value type. Products never need a
/// zero element: each entry starts from its first summand.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> r;
    r.rows_ = rows_;
    r.cols_ = cols_;
    r.data_.reserve(data_.size());
    for (const auto& x : data_) r.data_.push_back(f(x));
    return r;
  }

  Matrix transposed() const {
    Matrix r = *this;
    r.rows_ = cols_;
    r.cols_ = rows_;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix column(std::size_t j) const {
    Matrix r;
    r.rows_ = rows_;
    r.cols_ = 1;
    for (std::size_t i = 0; i < rows_; ++i) r.data_.push_back((*this)(i, j));
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_ && a.cols_ > 0, ErrorKind::RankMismatch, "matrix product shape mismatch");
    Matrix r;
    r.rows_ = a.rows_;
    r.cols_ = b.cols_;
    r.data_.reserve(a.rows_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        T acc = a(i, 0) * b(0, j);
        for (std::size_t k = 1; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
        r.data_.push_back(std::move(acc));
      }
    return r;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::RankMismatch, "matrix sum shape mismatch");
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::RankMismatch, "matrix difference shape mismatch");
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!(a.data_[k] == b.data_[k])) return false;
    return true;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  template <class U>
  friend class Matrix;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> minor_matrix(const Matrix<T>& m, std::size_t row, std::size_t col);

/// Cofactor expansion; fine at the d <= 4 sizes used here.
template <class T>
T determinant(const Matrix<T>& m) {
  require(m.square() && m.rows() > 0, ErrorKind::RankMismatch, "determinant of non-square matrix");
  const std::size_t d = m.rows();
  if (d == 1) return m(0, 0);
  if (d == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  // Laplace along the first row.
  T acc = m(0, 0) * determinant(minor_matrix(m, 0, 0));
  for (std::size_t j = 1; j < d; ++j) {
    T term = m(0, j) * determinant(minor_matrix(m, 0, j));
    if (j % 2 == 0) acc = acc + term;
    else acc = acc - term;
  }
  return acc;
}

template <class T>
Matrix<T> minor_matrix(const Matrix<T>& m, std::size_t row, std::size_t col) {
  Matrix<T> r(m.rows() - 1, m.cols() - 1, m(0, 0));
  for (std::size_t i = 0, ri = 0; i < m.rows(); ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, rj = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      r(ri, rj++) = m(i, j);
    }
    ++ri;
  }
  return r;
}

/// Adjugate: adj(m) * m = det(m) * 1; `one` is the unit of the entry ring.
template <class T>
Matrix<T> adjugate(const Matrix<T>& m, const T& one) {
  const std::size_t d = m.rows();
  Matrix<T> r(d, d, one);
  if (d == 1) return r;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      T c = determinant(minor_matrix(m, j, i));
      r(i, j) = ((i + j) % 2 == 0) ? c : -c;
    }
  return r;
}

}  // namespace bmc

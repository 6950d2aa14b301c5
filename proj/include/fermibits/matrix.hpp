// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fermibits/scalar.hpp"

namespace fermibits {

/// Dense row-major matrix over a Scalar.
template <Scalar S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, scalar_traits<S>::zero()) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] const std::vector<S>& data() const noexcept { return data_; }

  [[nodiscard]] Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = conjugate((*this)(r, c));
    return out;
  }

  [[nodiscard]] S trace() const {
    if (!is_square()) throw std::domain_error("trace of a non-square matrix");
    S t = scalar_traits<S>::zero();
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const S& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::domain_error("matrix product: inner dimensions differ");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::vector<S> operator*(const Matrix& a, const std::vector<S>& x) {
    if (a.cols_ != x.size()) throw std::domain_error("matrix-vector product: dimension mismatch");
    std::vector<S> y(a.rows_, scalar_traits<S>::zero());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) y[i] += a(i, k) * x[k];
    return y;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::domain_error("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

namespace detail {

template <Scalar S>
double pivot_weight(const S& x) {
  if constexpr (scalar_traits<S>::exact)
    return is_zero(x) ? 0.0 : 1.0;
  else
    return std::abs(x);
}

}  // namespace detail

/**
 * Determinant by Gaussian elimination with partial pivoting (largest
 * magnitude for floating scalars, first nonzero for exact ones). The empty
 * matrix has determinant one.
 */
template <Scalar S>
[[nodiscard]] S determinant(Matrix<S> m) {
  if (!m.is_square()) throw std::domain_error("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  S det = scalar_traits<S>::one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = detail::pivot_weight(m(col, col));
    for (std::size_t r = col + 1; r < n && !(scalar_traits<S>::exact && best > 0); ++r) {
      const double w = detail::pivot_weight(m(r, col));
      if (w > best) {
        best = w;
        pivot = r;
      }
    }
    if (best == 0.0) return scalar_traits<S>::zero();
    if (pivot != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(m(col, c), m(pivot, c));
      det = -det;
    }
    const S p = m(col, col);
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(m(r, col))) continue;
      const S f = m(r, col) / p;
      for (std::size_t c = col + 1; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

}  // namespace fermibits

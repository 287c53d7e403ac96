// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "feast/types.hpp"

namespace feast::linalg {

/// Column-major dense block. entry (i,j) lives at data()[i + j*rows()].
/// The layout and fill order are part of the reproducibility contract, so
/// keep them stable.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
      throw InputError("DenseMatrix: negative dimension");
    data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), T{});
  }

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(int i, int j) { return data_[idx(i, j)]; }
  const T& operator()(int i, int j) const { return data_[idx(i, j)]; }

  T* col(int j) { return data_.data() + static_cast<std::size_t>(j) * rows_; }
  const T* col(int j) const { return data_.data() + static_cast<std::size_t>(j) * rows_; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * rows_;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

/// C = A * B.
template <typename T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw InputError("matmul: inner dimensions differ");
  DenseMatrix<T> c(a.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    T* cj = c.col(j);
    for (int k = 0; k < a.cols(); ++k) {
      const T bkj = b(k, j);
      if (bkj == T{}) continue;
      const T* ak = a.col(k);
      for (int i = 0; i < a.rows(); ++i) cj[i] += ak[i] * bkj;
    }
  }
  return c;
}

/// C = A^H * B (plain transpose for real scalars).
template <typename T>
DenseMatrix<T> adjoint_matmul(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows()) throw InputError("adjoint_matmul: row counts differ");
  DenseMatrix<T> c(a.cols(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    const T* bj = b.col(j);
    for (int i = 0; i < a.cols(); ++i) {
      const T* ai = a.col(i);
      T s{};
      for (int k = 0; k < a.rows(); ++k) s += scalar_traits<T>::conj(ai[k]) * bj[k];
      c(i, j) = s;
    }
  }
  return c;
}

template <typename T>
DenseMatrix<T> adjoint(const DenseMatrix<T>& a) {
  DenseMatrix<T> r(a.cols(), a.rows());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) r(j, i) = scalar_traits<T>::conj(a(i, j));
  return r;
}

template <typename T>
double max_abs(const DenseMatrix<T>& a) {
  double m = 0.0;
  for (const T& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

template <typename T>
double frob_norm(const DenseMatrix<T>& a) {
  double s = 0.0;
  for (const T& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

inline DenseMatrix<cplx> to_complex(const DenseMatrix<double>& a) {
  DenseMatrix<cplx> c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = cplx(a.data()[k], 0.0);
  return c;
}

inline DenseMatrix<double> real_part(const DenseMatrix<cplx>& a) {
  DenseMatrix<double> r(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) r.data()[k] = a.data()[k].real();
  return r;
}

/// Hermitian (or symmetric) average (M + M^H)/2.
template <typename T>
DenseMatrix<T> hermitian_part(const DenseMatrix<T>& m) {
  DenseMatrix<T> h(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      h(i, j) = (m(i, j) + scalar_traits<T>::conj(m(j, i))) * 0.5;
  return h;
}

/// Copies the selected columns, preserving order.
template <typename T>
DenseMatrix<T> select_columns(const DenseMatrix<T>& m, const std::vector<int>& cols) {
  DenseMatrix<T> r(m.rows(), static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    std::copy(m.col(cols[j]), m.col(cols[j]) + m.rows(), r.col(static_cast<int>(j)));
  return r;
}

}  // namespace feast::linalg

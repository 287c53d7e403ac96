// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "feast/dense.hpp"
#include "feast/types.hpp"

namespace feast::linalg {

template <typename T>
struct Triplet {
  int row = 0;
  int col = 0;
  T value{};
};

/// How a triplet list describes the symmetric matrix.
enum class TripletLayout {
  /// Every off-diagonal entry (i,j) implies its mirror (j,i) with the
  /// conjugate value; explicit mirrors are also accepted and summed.
  MirrorOffDiagonal,
  /// The list already contains both triangles; symmetry is validated.
  Full,
};

/// Symmetric (real) or Hermitian (complex) operator with either dense or
/// compressed-sparse-row storage. Sparse storage keeps the symmetric-complete
/// pattern: both (i,j) and (j,i) are stored, so apply() never needs to branch
/// on triangles.
template <typename T>
class SymmetricOperator {
 public:
  enum class Storage { Dense, Sparse };

  SymmetricOperator() = default;

  /// Validates exact (conjugate) symmetry of the given matrix.
  static SymmetricOperator from_dense(DenseMatrix<T> m) {
    if (m.rows() != m.cols()) throw InputError("SymmetricOperator: matrix must be square");
    for (int j = 0; j < m.cols(); ++j) {
      for (int i = 0; i <= j; ++i) {
        if (m(i, j) != scalar_traits<T>::conj(m(j, i)))
          throw InputError("SymmetricOperator: matrix is not symmetric");
      }
      if constexpr (scalar_traits<T>::is_complex) {
        if (m(j, j).imag() != 0.0)
          throw InputError("SymmetricOperator: diagonal must be real");
      }
    }
    SymmetricOperator op;
    op.n_ = m.rows();
    op.storage_ = Storage::Dense;
    op.dense_ = std::move(m);
    return op;
  }

  /// Builds CSR storage from triplets. Duplicate coordinates are summed in
  /// input order.
  static SymmetricOperator from_triplets(int n, std::vector<Triplet<T>> entries,
                                         TripletLayout layout) {
    if (n <= 0) throw InputError("SymmetricOperator: dimension must be positive");
    std::vector<Triplet<T>> all;
    all.reserve(entries.size() * 2);
    for (const auto& t : entries) {
      if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
        throw InputError("SymmetricOperator: triplet index out of range");
      all.push_back(t);
      if (layout == TripletLayout::MirrorOffDiagonal && t.row != t.col)
        all.push_back({t.col, t.row, scalar_traits<T>::conj(t.value)});
    }
    std::stable_sort(all.begin(), all.end(), [](const Triplet<T>& a, const Triplet<T>& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SymmetricOperator op;
    op.n_ = n;
    op.storage_ = Storage::Sparse;
    op.row_ptr_.assign(n + 1, 0);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
      op.row_ptr_[i] = static_cast<int>(op.col_idx_.size());
      while (k < all.size() && all[k].row == i) {
        int j = all[k].col;
        T v{};
        while (k < all.size() && all[k].row == i && all[k].col == j) {
          v += all[k].value;
          ++k;
        }
        op.col_idx_.push_back(j);
        op.values_.push_back(v);
      }
    }
    op.row_ptr_[n] = static_cast<int>(op.col_idx_.size());

    op.validate_sparse_symmetry();
    return op;
  }

  static SymmetricOperator identity(int n) {
    std::vector<Triplet<T>> t(n);
    for (int i = 0; i < n; ++i) t[i] = {i, i, T{1}};
    return from_triplets(n, std::move(t), TripletLayout::Full);
  }

  int n() const { return n_; }
  Storage storage() const { return storage_; }

  /// Stored entry count: n*n for dense, symmetric-complete count for sparse.
  std::int64_t nnz() const {
    if (storage_ == Storage::Dense)
      return static_cast<std::int64_t>(n_) * n_;
    return static_cast<std::int64_t>(values_.size());
  }

  T entry(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
      throw InputError("SymmetricOperator: index out of range");
    if (storage_ == Storage::Dense) return dense_(i, j);
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      if (col_idx_[k] == j) return values_[k];
    return T{};
  }

  /// y = A x, column by column.
  void apply(const DenseMatrix<T>& x, DenseMatrix<T>& y) const {
    if (x.rows() != n_) throw InputError("SymmetricOperator::apply: dimension mismatch");
    y = DenseMatrix<T>(n_, x.cols());
    if (storage_ == Storage::Dense) {
      for (int c = 0; c < x.cols(); ++c) {
        const T* xc = x.col(c);
        T* yc = y.col(c);
        for (int j = 0; j < n_; ++j) {
          const T xj = xc[j];
          if (xj == T{}) continue;
          const T* aj = dense_.col(j);
          for (int i = 0; i < n_; ++i) yc[i] += aj[i] * xj;
        }
      }
    } else {
      for (int c = 0; c < x.cols(); ++c) {
        const T* xc = x.col(c);
        T* yc = y.col(c);
        for (int i = 0; i < n_; ++i) {
          T s{};
          for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            s += values_[k] * xc[col_idx_[k]];
          yc[i] = s;
        }
      }
    }
  }

  DenseMatrix<T> apply(const DenseMatrix<T>& x) const {
    DenseMatrix<T> y;
    apply(x, y);
    return y;
  }

  /// y = A x on complex blocks, for shifted systems and iterative solves.
  void apply_to_complex(const DenseMatrix<cplx>& x, DenseMatrix<cplx>& y) const {
    if (x.rows() != n_) throw InputError("SymmetricOperator::apply: dimension mismatch");
    y = DenseMatrix<cplx>(n_, x.cols());
    if (storage_ == Storage::Dense) {
      for (int c = 0; c < x.cols(); ++c) {
        const cplx* xc = x.col(c);
        cplx* yc = y.col(c);
        for (int j = 0; j < n_; ++j) {
          const cplx xj = xc[j];
          const T* aj = dense_.col(j);
          for (int i = 0; i < n_; ++i) yc[i] += aj[i] * xj;
        }
      }
    } else {
      for (int c = 0; c < x.cols(); ++c) {
        const cplx* xc = x.col(c);
        cplx* yc = y.col(c);
        for (int i = 0; i < n_; ++i) {
          cplx s{};
          for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            s += values_[k] * xc[col_idx_[k]];
          yc[i] = s;
        }
      }
    }
  }

  /// Max absolute column sum; the row variant is equal by symmetry.
  double norm_one() const {
    double best = 0.0;
    if (storage_ == Storage::Dense) {
      for (int j = 0; j < n_; ++j) {
        const T* aj = dense_.col(j);
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += std::abs(aj[i]);
        best = std::max(best, s);
      }
    } else {
      for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += std::abs(values_[k]);
        best = std::max(best, s);
      }
    }
    return best;
  }

  /// Largest |i - j| over stored entries (n-1 for dense storage).
  int bandwidth() const {
    if (storage_ == Storage::Dense) return n_ > 0 ? n_ - 1 : 0;
    int bw = 0;
    for (int i = 0; i < n_; ++i)
      for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
        bw = std::max(bw, std::abs(i - col_idx_[k]));
    return bw;
  }

  DenseMatrix<T> to_dense() const {
    if (storage_ == Storage::Dense) return dense_;
    DenseMatrix<T> m(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) m(i, col_idx_[k]) = values_[k];
    return m;
  }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<T>& values() const { return values_; }

 private:
  void validate_sparse_symmetry() const {
    for (int i = 0; i < n_; ++i) {
      for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
        const int j = col_idx_[k];
        if (i == j) {
          if constexpr (scalar_traits<T>::is_complex) {
            if (values_[k].imag() != 0.0)
              throw InputError("SymmetricOperator: diagonal must be real");
          }
          continue;
        }
        if (j < i) continue;
        bool found = false;
        for (int k2 = row_ptr_[j]; k2 < row_ptr_[j + 1]; ++k2) {
          if (col_idx_[k2] == i) {
            if (values_[k2] != scalar_traits<T>::conj(values_[k]))
              throw InputError("SymmetricOperator: mirror entries disagree");
            found = true;
            break;
          }
        }
        if (!found) throw InputError("SymmetricOperator: missing mirror entry");
      }
    }
  }

  int n_ = 0;
  Storage storage_ = Storage::Dense;
  DenseMatrix<T> dense_;
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<T> values_;
};

inline SymmetricOperator<cplx> to_complex(const SymmetricOperator<double>& a) {
  if (a.storage() == SymmetricOperator<double>::Storage::Dense)
    return SymmetricOperator<cplx>::from_dense(to_complex(a.to_dense()));
  std::vector<Triplet<cplx>> t;
  t.reserve(static_cast<std::size_t>(a.nnz()));
  for (int i = 0; i < a.n(); ++i)
    for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
      t.push_back({i, a.col_idx()[k], cplx(a.values()[k], 0.0)});
  return SymmetricOperator<cplx>::from_triplets(a.n(), std::move(t), TripletLayout::Full);
}

/// A + t*S with matching dimensions; the result is sparse when both inputs
/// are sparse, dense otherwise.
template <typename T>
SymmetricOperator<T> add_scaled(const SymmetricOperator<T>& a, const SymmetricOperator<T>& s,
                                double t) {
  if (a.n() != s.n()) throw InputError("add_scaled: dimension mismatch");
  using Op = SymmetricOperator<T>;
  if (a.storage() == Op::Storage::Sparse && s.storage() == Op::Storage::Sparse) {
    std::vector<Triplet<T>> trip;
    trip.reserve(static_cast<std::size_t>(a.nnz() + s.nnz()));
    for (int i = 0; i < a.n(); ++i)
      for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
        trip.push_back({i, a.col_idx()[k], a.values()[k]});
    for (int i = 0; i < s.n(); ++i)
      for (int k = s.row_ptr()[i]; k < s.row_ptr()[i + 1]; ++k)
        trip.push_back({i, s.col_idx()[k], s.values()[k] * t});
    return Op::from_triplets(a.n(), std::move(trip), TripletLayout::Full);
  }
  DenseMatrix<T> m = a.to_dense();
  DenseMatrix<T> sd = s.to_dense();
  for (std::size_t k = 0; k < m.data().size(); ++k) m.data()[k] += sd.data()[k] * t;
  return Op::from_dense(std::move(m));
}

}  // namespace feast::linalg

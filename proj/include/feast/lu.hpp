// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <vector>

#include "feast/dense.hpp"
#include "feast/types.hpp"

namespace feast::linalg {

enum class SolveMode {
  Normal,
  /// Solve M^H x = b on the factorization of M.
  ConjTranspose,
};

/// LU factorization with partial pivoting of a dense complex matrix,
/// factored in place on construction.
class DenseLU {
 public:
  explicit DenseLU(DenseMatrix<cplx> m) : lu_(std::move(m)) {
    const int n = lu_.rows();
    if (n != lu_.cols()) throw InputError("DenseLU: matrix must be square");
    ipiv_.resize(n);
    for (int k = 0; k < n; ++k) {
      int p = k;
      double best = std::abs(lu_(k, k));
      for (int i = k + 1; i < n; ++i) {
        const double v = std::abs(lu_(i, k));
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (best == 0.0) throw NumericalError("DenseLU: matrix is numerically singular");
      ipiv_[k] = p;
      if (p != k)
        for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      const cplx pivot = lu_(k, k);
      for (int i = k + 1; i < n; ++i) lu_(i, k) /= pivot;
      for (int j = k + 1; j < n; ++j) {
        const cplx ukj = lu_(k, j);
        if (ukj == cplx{}) continue;
        cplx* colj = lu_.col(j);
        const cplx* colk = lu_.col(k);
        for (int i = k + 1; i < n; ++i) colj[i] -= colk[i] * ukj;
      }
    }
  }

  int n() const { return lu_.rows(); }

  void solve_in_place(DenseMatrix<cplx>& rhs, SolveMode mode = SolveMode::Normal) const {
    const int n = lu_.rows();
    if (rhs.rows() != n) throw InputError("DenseLU::solve: dimension mismatch");
    for (int c = 0; c < rhs.cols(); ++c) {
      cplx* b = rhs.col(c);
      if (mode == SolveMode::Normal) {
        for (int k = 0; k < n; ++k)
          if (ipiv_[k] != k) std::swap(b[k], b[ipiv_[k]]);
        for (int k = 0; k < n; ++k) {
          const cplx bk = b[k];
          if (bk == cplx{}) continue;
          const cplx* colk = lu_.col(k);
          for (int i = k + 1; i < n; ++i) b[i] -= colk[i] * bk;
        }
        for (int k = n - 1; k >= 0; --k) {
          b[k] /= lu_(k, k);
          const cplx bk = b[k];
          if (bk == cplx{}) continue;
          const cplx* colk = lu_.col(k);
          for (int i = 0; i < k; ++i) b[i] -= colk[i] * bk;
        }
      } else {
        // M^H = U^H L^H P with the row swaps folded into P.
        for (int k = 0; k < n; ++k) {
          cplx s = b[k];
          const cplx* colk = lu_.col(k);
          for (int i = 0; i < k; ++i) s -= std::conj(colk[i]) * b[i];
          b[k] = s / std::conj(colk[k]);
        }
        for (int k = n - 1; k >= 0; --k) {
          cplx s = b[k];
          const cplx* colk = lu_.col(k);
          for (int i = k + 1; i < n; ++i) s -= std::conj(colk[i]) * b[i];
          b[k] = s;
        }
        for (int k = n - 1; k >= 0; --k)
          if (ipiv_[k] != k) std::swap(b[k], b[ipiv_[k]]);
      }
    }
  }

 private:
  DenseMatrix<cplx> lu_;
  std::vector<int> ipiv_;
};

/// Band storage with room for pivoting fill: ldab = 2*kl + ku + 1 rows,
/// entry (i,j) at ab[kl + ku + i - j + j*ldab].
struct BandMatrix {
  int n = 0;
  int kl = 0;
  int ku = 0;
  int ldab = 0;
  std::vector<cplx> ab;

  BandMatrix() = default;
  BandMatrix(int n_, int kl_, int ku_) : n(n_), kl(kl_), ku(ku_), ldab(2 * kl_ + ku_ + 1) {
    if (n <= 0 || kl < 0 || ku < 0) throw InputError("BandMatrix: bad dimensions");
    ab.assign(static_cast<std::size_t>(ldab) * n, cplx{});
  }

  cplx& at(int i, int j) {
    return ab[static_cast<std::size_t>(kl + ku + i - j) + static_cast<std::size_t>(j) * ldab];
  }
  const cplx& at(int i, int j) const {
    return ab[static_cast<std::size_t>(kl + ku + i - j) + static_cast<std::size_t>(j) * ldab];
  }
};

/// LU factorization with partial pivoting in band storage; fill stays within
/// kl + ku superdiagonals.
class BandedLU {
 public:
  explicit BandedLU(BandMatrix m) : m_(std::move(m)) {
    const int n = m_.n;
    const int kl = m_.kl;
    const int kw = m_.kl + m_.ku;  // U bandwidth after pivoting
    ipiv_.resize(n);
    for (int k = 0; k < n; ++k) {
      const int last_row = std::min(n - 1, k + kl);
      int p = k;
      double best = std::abs(m_.at(k, k));
      for (int i = k + 1; i <= last_row; ++i) {
        const double v = std::abs(m_.at(i, k));
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (best == 0.0) throw NumericalError("BandedLU: matrix is numerically singular");
      ipiv_[k] = p;
      const int last_col = std::min(n - 1, k + kw);
      if (p != k)
        for (int j = k; j <= last_col; ++j) std::swap(m_.at(k, j), m_.at(p, j));
      const cplx pivot = m_.at(k, k);
      for (int i = k + 1; i <= last_row; ++i) {
        const cplx l = m_.at(i, k) / pivot;
        m_.at(i, k) = l;
        if (l == cplx{}) continue;
        for (int j = k + 1; j <= last_col; ++j) m_.at(i, j) -= l * m_.at(k, j);
      }
    }
  }

  int n() const { return m_.n; }

  void solve_in_place(DenseMatrix<cplx>& rhs, SolveMode mode = SolveMode::Normal) const {
    const int n = m_.n;
    const int kl = m_.kl;
    const int kw = m_.kl + m_.ku;
    if (rhs.rows() != n) throw InputError("BandedLU::solve: dimension mismatch");
    for (int c = 0; c < rhs.cols(); ++c) {
      cplx* b = rhs.col(c);
      if (mode == SolveMode::Normal) {
        for (int k = 0; k < n; ++k) {
          if (ipiv_[k] != k) std::swap(b[k], b[ipiv_[k]]);
          const cplx bk = b[k];
          if (bk == cplx{}) continue;
          const int last_row = std::min(n - 1, k + kl);
          for (int i = k + 1; i <= last_row; ++i) b[i] -= m_.at(i, k) * bk;
        }
        for (int k = n - 1; k >= 0; --k) {
          cplx s = b[k];
          const int last_col = std::min(n - 1, k + kw);
          for (int j = k + 1; j <= last_col; ++j) s -= m_.at(k, j) * b[j];
          b[k] = s / m_.at(k, k);
        }
      } else {
        for (int k = 0; k < n; ++k) {
          cplx s = b[k];
          const int first_row = std::max(0, k - kw);
          for (int j = first_row; j < k; ++j) s -= std::conj(m_.at(j, k)) * b[j];
          b[k] = s / std::conj(m_.at(k, k));
        }
        // Band pivoting swaps only the trailing columns, so each swap has to
        // be replayed right after its own L column on the transpose pass.
        for (int k = n - 1; k >= 0; --k) {
          cplx s = b[k];
          const int last_row = std::min(n - 1, k + kl);
          for (int i = k + 1; i <= last_row; ++i) s -= std::conj(m_.at(i, k)) * b[i];
          b[k] = s;
          if (ipiv_[k] != k) std::swap(b[k], b[ipiv_[k]]);
        }
      }
    }
  }

 private:
  BandMatrix m_;
  std::vector<int> ipiv_;
};

}  // namespace feast::linalg

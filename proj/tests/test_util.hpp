// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "feast/core.hpp"
#include "feast/operator.hpp"

namespace feast::testutil {

using linalg::DenseMatrix;
using linalg::SymmetricOperator;

/// Random dense symmetric matrix with entries in [-1, 1].
inline SymmetricOperator<double> random_symmetric(int n, std::uint64_t seed) {
  DenseMatrix<double> r = random_block<double>(n, n, seed);
  DenseMatrix<double> m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) {
      m(i, j) = r(i, j);
      m(j, i) = r(i, j);
    }
  return SymmetricOperator<double>::from_dense(std::move(m));
}

/// Random dense s.p.d. matrix, diagonally shifted so definiteness is safe.
inline SymmetricOperator<double> random_spd(int n, std::uint64_t seed) {
  DenseMatrix<double> r = random_block<double>(n, n, seed);
  DenseMatrix<double> g = linalg::adjoint_matmul(r, r);
  for (std::size_t k = 0; k < g.data().size(); ++k) g.data()[k] /= n;
  for (int i = 0; i < n; ++i) g(i, i) += 1.0;
  // Exact symmetry: the product picks up round-off asymmetry.
  DenseMatrix<double> m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) {
      m(i, j) = g(i, j);
      m(j, i) = g(i, j);
    }
  return SymmetricOperator<double>::from_dense(std::move(m));
}

/// Random dense Hermitian matrix.
inline SymmetricOperator<cplx> random_hermitian(int n, std::uint64_t seed) {
  DenseMatrix<cplx> r = random_block<cplx>(n, n, seed);
  DenseMatrix<cplx> m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      m(i, j) = r(i, j);
      m(j, i) = std::conj(r(i, j));
    }
    m(j, j) = cplx(r(j, j).real(), 0.0);
  }
  return SymmetricOperator<cplx>::from_dense(std::move(m));
}

/// Random Hermitian positive definite matrix.
inline SymmetricOperator<cplx> random_hpd(int n, std::uint64_t seed) {
  DenseMatrix<cplx> r = random_block<cplx>(n, n, seed);
  DenseMatrix<cplx> g = linalg::adjoint_matmul(r, r);
  for (std::size_t k = 0; k < g.data().size(); ++k) g.data()[k] /= static_cast<double>(n);
  DenseMatrix<cplx> m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      m(i, j) = g(i, j);
      m(j, i) = std::conj(g(i, j));
    }
    m(j, j) = cplx(g(j, j).real() + 1.0, 0.0);
  }
  return SymmetricOperator<cplx>::from_dense(std::move(m));
}

/// Orthonormal n-by-m block without any orthogonalization kernel: the
/// eigenvector matrix of a random symmetric matrix is orthogonal.
inline DenseMatrix<double> random_orthonormal(int n, int m, std::uint64_t seed) {
  SymmetricOperator<double> s = random_symmetric(n, seed);
  linalg::EighResult<double> e = linalg::jacobi_eigh(s.to_dense());
  std::vector<int> cols(m);
  for (int j = 0; j < m; ++j) cols[j] = j;
  return linalg::select_columns(e.vectors, cols);
}

/// Picks [lo, hi] capturing exactly `want` consecutive eigenvalues of the
/// ascending list, with a safety margin to each excluded neighbor. Returns
/// false when no window has usable gaps.
inline bool pick_interval(const std::vector<double>& ev, int want, double margin, double* lo,
                          double* hi) {
  const int n = static_cast<int>(ev.size());
  for (int start = 0; start + want <= n; ++start) {
    const double below = start == 0 ? ev[0] - 1.0 : ev[start - 1];
    const double above = start + want == n ? ev[n - 1] + 1.0 : ev[start + want];
    if (ev[start] - below < 2 * margin) continue;
    if (above - ev[start + want - 1] < 2 * margin) continue;
    *lo = ev[start] - margin;
    *hi = ev[start + want - 1] + margin;
    return true;
  }
  return false;
}

}  // namespace feast::testutil

// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "feast/dense.hpp"
#include "feast/types.hpp"

namespace feast::linalg {

/// Lower Cholesky factor of a symmetric / Hermitian positive definite matrix.
/// With rel_pivot_tol > 0 a pivot below rel_pivot_tol * max(initial diagonal)
/// also counts as failure; the default rejects only pivots <= 0.
template <typename T>
DenseMatrix<T> cholesky(const DenseMatrix<T>& m, double rel_pivot_tol = 0.0) {
  const int n = m.rows();
  if (n != m.cols()) throw InputError("cholesky: matrix must be square");
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, scalar_traits<T>::real(m(i, i)));
  const double floor = rel_pivot_tol * max_diag;

  DenseMatrix<T> l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = scalar_traits<T>::real(m(j, j));
    for (int k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (d <= 0.0 || d <= floor)
      throw NotPositiveDefinite("cholesky: pivot is not positive");
    const double ljj = std::sqrt(d);
    l(j, j) = T{ljj};
    for (int i = j + 1; i < n; ++i) {
      T s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * scalar_traits<T>::conj(l(j, k));
      l(i, j) = s / T{ljj};
    }
  }
  return l;
}

/// X <- L^-1 X for lower-triangular L.
template <typename T>
void solve_lower_in_place(const DenseMatrix<T>& l, DenseMatrix<T>& x) {
  const int n = l.rows();
  if (x.rows() != n) throw InputError("solve_lower: dimension mismatch");
  for (int c = 0; c < x.cols(); ++c) {
    T* b = x.col(c);
    for (int k = 0; k < n; ++k) {
      b[k] /= l(k, k);
      const T bk = b[k];
      for (int i = k + 1; i < n; ++i) b[i] -= l(i, k) * bk;
    }
  }
}

/// X <- L^-H X for lower-triangular L.
template <typename T>
void solve_lower_adjoint_in_place(const DenseMatrix<T>& l, DenseMatrix<T>& x) {
  const int n = l.rows();
  if (x.rows() != n) throw InputError("solve_lower_adjoint: dimension mismatch");
  for (int c = 0; c < x.cols(); ++c) {
    T* b = x.col(c);
    for (int k = n - 1; k >= 0; --k) {
      T s = b[k];
      for (int i = k + 1; i < n; ++i) s -= scalar_traits<T>::conj(l(i, k)) * b[i];
      b[k] = s / scalar_traits<T>::conj(l(k, k));
    }
  }
}

template <typename T>
struct EighResult {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix<T> vectors;           // unitary, column k pairs with eigenvalue k
};

/// Cyclic Jacobi eigensolver for symmetric / Hermitian matrices. Works on the
/// Hermitian part of the input; rotations sweep the strict upper triangle
/// until the off-diagonal mass is at round-off level.
template <typename T>
EighResult<T> jacobi_eigh(const DenseMatrix<T>& m_in, int max_sweeps = 50) {
  const int n = m_in.rows();
  if (n != m_in.cols()) throw InputError("jacobi_eigh: matrix must be square");
  DenseMatrix<T> w = hermitian_part(m_in);
  DenseMatrix<T> v = DenseMatrix<T>::identity(n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(frob_norm(w), std::numeric_limits<double>::min());

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int q = 1; q < n; ++q)
      for (int p = 0; p < q; ++p) off += std::norm(w(p, q));
    off = std::sqrt(off);
    if (off <= n * eps * scale) break;
    // Rutishauser-style threshold: skip tiny rotations early.
    const double thresh = sweep < 3 ? 0.2 * off / (static_cast<double>(n) * n) : 0.0;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const T apq = w(p, q);
        const double a = std::abs(apq);
        const double app = scalar_traits<T>::real(w(p, p));
        const double aqq = scalar_traits<T>::real(w(q, q));
        if (a <= thresh) continue;
        if (sweep > 3 && a <= eps * 0.5 * (std::abs(app) + std::abs(aqq))) {
          w(p, q) = T{};
          w(q, p) = T{};
          continue;
        }
        if (a == 0.0) continue;

        // Phase factor makes the pivot effectively real, then a classical
        // Givens pair annihilates it: G = diag(1, conj(ph)) applied after the
        // plane rotation [c s; -s c] on coordinates (p, q).
        const T ph = apq * T{1.0 / a};
        const T phc = scalar_traits<T>::conj(ph);
        const double tau = (aqq - app) / (2.0 * a);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (int i = 0; i < n; ++i) {
          const T wip = w(i, p);
          const T wiq = w(i, q);
          w(i, p) = wip * T{c} - wiq * (phc * T{s});
          w(i, q) = wip * T{s} + wiq * (phc * T{c});
        }
        for (int j = 0; j < n; ++j) {
          const T wpj = w(p, j);
          const T wqj = w(q, j);
          w(p, j) = wpj * T{c} - wqj * (ph * T{s});
          w(q, j) = wpj * T{s} + wqj * (ph * T{c});
        }
        w(p, q) = T{};
        w(q, p) = T{};
        w(p, p) = T{scalar_traits<T>::real(w(p, p))};
        w(q, q) = T{scalar_traits<T>::real(w(q, q))};
        for (int i = 0; i < n; ++i) {
          const T vip = v(i, p);
          const T viq = v(i, q);
          v(i, p) = vip * T{c} - viq * (phc * T{s});
          v(i, q) = vip * T{s} + viq * (phc * T{c});
        }
      }
    }
  }

  EighResult<T> r;
  r.eigenvalues.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = scalar_traits<T>::real(w(i, i));
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return diag[x] < diag[y]; });
  for (int i = 0; i < n; ++i) r.eigenvalues[i] = diag[order[i]];
  r.vectors = select_columns(v, order);
  return r;
}

constexpr int kMaxReducedDimension = 128;

template <typename T>
struct ReducedEig {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix<T> phi;               // B_Q-orthonormal eigenvector block
  bool truncated = false;           // spectral-truncation fallback was used
};

/// Dense generalized eigensolver for the projected pencil (A_Q, B_Q).
/// Primary path: Cholesky reduction of B_Q followed by Jacobi. When B_Q has
/// lost positive definiteness to round-off the ill-conditioned directions are
/// truncated away spectrally and the solve proceeds in the reduced space.
template <typename T>
ReducedEig<T> reduced_gevp(const DenseMatrix<T>& a_q, const DenseMatrix<T>& b_q) {
  const int m = a_q.rows();
  if (m != a_q.cols() || b_q.rows() != m || b_q.cols() != m)
    throw InputError("reduced_gevp: blocks must be square with equal size");
  if (m > kMaxReducedDimension)
    throw InputError("reduced_gevp: projected block exceeds supported size");
  if (m == 0) return {};

  constexpr double kCholeskyRelTol = 1e-13;
  constexpr double kTruncationRelTol = 1e-14;

  try {
    const DenseMatrix<T> l = cholesky(b_q, kCholeskyRelTol);
    DenseMatrix<T> t1 = a_q;
    solve_lower_in_place(l, t1);        // L^-1 A
    DenseMatrix<T> t2 = adjoint(t1);
    solve_lower_in_place(l, t2);        // L^-1 A^H L^-H, transposed
    DenseMatrix<T> c = adjoint(t2);     // L^-1 A L^-H
    EighResult<T> e = jacobi_eigh(c);
    solve_lower_adjoint_in_place(l, e.vectors);  // Phi = L^-H W
    return {std::move(e.eigenvalues), std::move(e.vectors), false};
  } catch (const NotPositiveDefinite&) {
    // fall through to the truncated path
  }

  EighResult<T> be = jacobi_eigh(b_q);
  const double dmax = be.eigenvalues.empty() ? 0.0 : be.eigenvalues.back();
  if (!(dmax > 0.0))
    throw SubspaceBreakdown("reduced_gevp: projected mass matrix has no positive modes");
  std::vector<int> keep;
  for (int i = 0; i < m; ++i)
    if (be.eigenvalues[i] > kTruncationRelTol * dmax) keep.push_back(i);
  if (keep.empty())
    throw SubspaceBreakdown("reduced_gevp: projected mass matrix has no usable modes");

  DenseMatrix<T> s = select_columns(be.vectors, keep);
  for (std::size_t j = 0; j < keep.size(); ++j) {
    const double inv = 1.0 / std::sqrt(be.eigenvalues[keep[j]]);
    T* col = s.col(static_cast<int>(j));
    for (int i = 0; i < m; ++i) col[i] *= T{inv};
  }
  DenseMatrix<T> a_red = adjoint_matmul(s, matmul(a_q, s));
  a_red = hermitian_part(a_red);
  EighResult<T> e = jacobi_eigh(a_red);
  DenseMatrix<T> phi = matmul(s, e.vectors);
  return {std::move(e.eigenvalues), std::move(phi), true};
}

}  // namespace feast::linalg

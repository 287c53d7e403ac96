// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "feast/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "feast/quadrature.hpp"

namespace feast::oracle {

namespace {

// Everything below is the oracle's private toolbox. It repeats functionality
// that exists elsewhere in the library on purpose: a reference result is only
// convincing when it comes from a different code path.

template <typename T>
DenseMatrix<T> lower_cholesky(const DenseMatrix<T>& m) {
  const int n = m.rows();
  DenseMatrix<T> l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = scalar_traits<T>::real(m(j, j));
    for (int k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) throw NumericalError("oracle: mass matrix is not positive definite");
    const double root = std::sqrt(d);
    l(j, j) = T{root};
    for (int i = j + 1; i < n; ++i) {
      T s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * scalar_traits<T>::conj(l(j, k));
      l(i, j) = s / T{root};
    }
  }
  return l;
}

template <typename T>
void forward_substitute(const DenseMatrix<T>& l, DenseMatrix<T>& x) {
  const int n = l.rows();
  for (int c = 0; c < x.cols(); ++c)
    for (int k = 0; k < n; ++k) {
      T s = x(k, c);
      for (int i = 0; i < k; ++i) s -= l(k, i) * x(i, c);
      x(k, c) = s / l(k, k);
    }
}

template <typename T>
void backward_substitute_adjoint(const DenseMatrix<T>& l, DenseMatrix<T>& x) {
  const int n = l.rows();
  for (int c = 0; c < x.cols(); ++c)
    for (int k = n - 1; k >= 0; --k) {
      T s = x(k, c);
      for (int i = k + 1; i < n; ++i) s -= scalar_traits<T>::conj(l(i, k)) * x(i, c);
      x(k, c) = s / scalar_traits<T>::conj(l(k, k));
    }
}

// One-sided cyclic Jacobi diagonalization, its own copy.
template <typename T>
void diagonalize(DenseMatrix<T>& w, DenseMatrix<T>& v) {
  const int n = w.rows();
  v = DenseMatrix<T>::identity(n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double scale = 0.0;
  for (const T& x : w.data()) scale += std::norm(x);
  scale = std::sqrt(scale);
  if (scale == 0.0) return;

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int q = 1; q < n; ++q)
      for (int p = 0; p < q; ++p) off += std::norm(w(p, q));
    off = std::sqrt(off);
    if (off <= n * eps * scale) return;
    const double thresh = sweep < 3 ? 0.2 * off / (static_cast<double>(n) * n) : 0.0;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const T apq = w(p, q);
        const double mag = std::abs(apq);
        if (mag <= thresh) continue;
        const double app = scalar_traits<T>::real(w(p, p));
        const double aqq = scalar_traits<T>::real(w(q, q));
        if (sweep > 3 && mag <= eps * 0.5 * (std::abs(app) + std::abs(aqq))) {
          w(p, q) = T{};
          w(q, p) = T{};
          continue;
        }
        if (mag == 0.0) continue;
        const T ph = apq * T{1.0 / mag};
        const T phc = scalar_traits<T>::conj(ph);
        const double tau = (aqq - app) / (2.0 * mag);
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
}

// Gaussian elimination with partial pivoting, factor-and-solve in one go.
void gauss_solve(DenseMatrix<cplx> m, DenseMatrix<cplx>& rhs) {
  const int n = m.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(m(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        p = i;
      }
    if (best == 0.0) throw NumericalError("oracle: shifted system is singular");
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      for (int c = 0; c < rhs.cols(); ++c) std::swap(rhs(k, c), rhs(p, c));
    }
    for (int i = k + 1; i < n; ++i) {
      const cplx f = m(i, k) / m(k, k);
      if (f == cplx{}) continue;
      for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
      for (int c = 0; c < rhs.cols(); ++c) rhs(i, c) -= f * rhs(k, c);
    }
  }
  for (int c = 0; c < rhs.cols(); ++c)
    for (int k = n - 1; k >= 0; --k) {
      cplx s = rhs(k, c);
      for (int j = k + 1; j < n; ++j) s -= m(k, j) * rhs(j, c);
      rhs(k, c) = s / m(k, k);
    }
}

}  // namespace

template <typename T>
Spectrum<T> reference_gevp(const SymmetricOperator<T>& a, const SymmetricOperator<T>& b) {
  if (a.n() != b.n()) throw InputError("reference_gevp: operator dimensions differ");
  if (a.n() > 2000) throw InputError("reference_gevp: matrix too large for the oracle");
  const int n = a.n();

  const DenseMatrix<T> l = lower_cholesky(b.to_dense());

  // C = L^-1 A L^-H, formed column block by column block.
  DenseMatrix<T> c = a.to_dense();
  forward_substitute(l, c);
  c = linalg::adjoint(c);
  forward_substitute(l, c);
  c = linalg::adjoint(c);
  c = linalg::hermitian_part(c);

  DenseMatrix<T> v;
  diagonalize(c, v);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = scalar_traits<T>::real(c(i, i));
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });

  Spectrum<T> s;
  s.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) s.eigenvalues[i] = diag[order[i]];
  s.eigenvectors = linalg::select_columns(v, order);
  backward_substitute_adjoint(l, s.eigenvectors);
  return s;
}

template Spectrum<double> reference_gevp(const SymmetricOperator<double>&,
                                         const SymmetricOperator<double>&);
template Spectrum<cplx> reference_gevp(const SymmetricOperator<cplx>&,
                                       const SymmetricOperator<cplx>&);

double scalar_filter(double lambda, const SearchInterval& interval, int n_e) {
  const quadrature::Contour c = quadrature::build_contour(interval, n_e);
  double f = 0.0;
  for (const auto& pt : c.points) {
    const cplx re_itheta(std::cos(pt.theta), std::sin(pt.theta));
    f -= 0.5 * pt.weight * (c.radius * re_itheta / (pt.z - lambda)).real();
  }
  return f;
}

DenseMatrix<double> apply_numeric_projector(const SymmetricOperator<double>& a,
                                            const SymmetricOperator<double>& b,
                                            const SearchInterval& interval, int n_e,
                                            const DenseMatrix<double>& v) {
  if (a.n() > 200) throw InputError("apply_numeric_projector: matrix too large for the oracle");
  if (v.rows() != a.n()) throw InputError("apply_numeric_projector: dimension mismatch");
  const quadrature::Contour c = quadrature::build_contour(interval, n_e);
  const DenseMatrix<double> ad = a.to_dense();
  const DenseMatrix<double> bd = b.to_dense();
  const int n = a.n();

  DenseMatrix<double> out(v.rows(), v.cols());
  for (const auto& pt : c.points) {
    DenseMatrix<cplx> m(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) m(i, j) = pt.z * bd(i, j) - ad(i, j);
    DenseMatrix<cplx> rhs = linalg::to_complex(v);
    gauss_solve(std::move(m), rhs);
    const cplx coeff =
        0.5 * pt.weight * c.radius * cplx(std::cos(pt.theta), std::sin(pt.theta));
    for (std::size_t k = 0; k < out.data().size(); ++k)
      out.data()[k] -= (coeff * rhs.data()[k]).real();
  }
  return out;
}

}  // namespace feast::oracle

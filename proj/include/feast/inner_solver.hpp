// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <memory>

#include "feast/assemble.hpp"
#include "feast/lu.hpp"
#include "feast/operator.hpp"

namespace feast {

using linalg::BandedLU;
using linalg::DenseLU;
using linalg::DenseMatrix;
using linalg::SolveMode;
using linalg::SymmetricOperator;

/// A prepared solver for one shifted system z*B - A. ConjTranspose mode
/// solves with (z*B - A)^H, which is the system at conj(z) for Hermitian
/// operands.
class ShiftSystem {
 public:
  virtual ~ShiftSystem() = default;
  virtual void solve_in_place(DenseMatrix<cplx>& rhs, SolveMode mode) const = 0;
};

/// Factory for per-shift solvers. Implementations must be safe to call from
/// several threads at once.
template <typename T>
class InnerSolver {
 public:
  virtual ~InnerSolver() = default;
  virtual std::unique_ptr<ShiftSystem> prepare(cplx z) const = 0;
  /// Relative residual the solve guarantees; 0 means direct factorization.
  virtual double residual_target() const = 0;
};

enum class FactorPolicy {
  /// Band factorization when both operators are sparse and narrow-banded,
  /// dense otherwise.
  Auto,
  Dense,
  Banded,
};

namespace detail {

class DenseShiftSystem final : public ShiftSystem {
 public:
  explicit DenseShiftSystem(DenseMatrix<cplx> m) : lu_(std::move(m)) {}
  void solve_in_place(DenseMatrix<cplx>& rhs, SolveMode mode) const override {
    lu_.solve_in_place(rhs, mode);
  }

 private:
  DenseLU lu_;
};

class BandedShiftSystem final : public ShiftSystem {
 public:
  explicit BandedShiftSystem(linalg::BandMatrix m) : lu_(std::move(m)) {}
  void solve_in_place(DenseMatrix<cplx>& rhs, SolveMode mode) const override {
    lu_.solve_in_place(rhs, mode);
  }

 private:
  BandedLU lu_;
};

}  // namespace detail

/// Factorizes z*B - A once per shift and reuses the factors for every solve.
template <typename T>
class DirectSolver final : public InnerSolver<T> {
 public:
  DirectSolver(const SymmetricOperator<T>& a, const SymmetricOperator<T>& b,
               FactorPolicy policy = FactorPolicy::Auto)
      : a_(a), b_(b), policy_(policy) {
    if (a.n() != b.n()) throw InputError("DirectSolver: operator dimensions differ");
    using Op = SymmetricOperator<T>;
    const bool sparse = a.storage() == Op::Storage::Sparse &&
                        b.storage() == Op::Storage::Sparse;
    if (policy_ == FactorPolicy::Banded && !sparse)
      throw InputError("DirectSolver: banded policy requires sparse operands");
    if (policy_ == FactorPolicy::Auto) {
      // Band solves win once the factored band is well under the dimension.
      const int bw = sparse ? std::max(a.bandwidth(), b.bandwidth()) : a.n();
      banded_ = sparse && (3 * bw + 1) * 2 <= a.n();
    } else {
      banded_ = policy_ == FactorPolicy::Banded;
    }
  }

  std::unique_ptr<ShiftSystem> prepare(cplx z) const override {
    if (banded_)
      return std::make_unique<detail::BandedShiftSystem>(
          linalg::assemble_shifted_banded(a_, b_, z));
    return std::make_unique<detail::DenseShiftSystem>(
        linalg::assemble_shifted_dense(a_, b_, z));
  }

  double residual_target() const override { return 0.0; }

  bool uses_band_storage() const { return banded_; }

 private:
  const SymmetricOperator<T>& a_;
  const SymmetricOperator<T>& b_;
  FactorPolicy policy_;
  bool banded_ = false;
};

namespace detail {

/// Unpreconditioned BiCGStab on the operator x -> z*Bx - Ax, run column by
/// column to the requested relative residual. Chosen over Krylov methods
/// that build orthonormal bases, so the library stays free of any
/// orthogonalization kernel.
template <typename T>
class BicgstabShiftSystem final : public ShiftSystem {
 public:
  BicgstabShiftSystem(const SymmetricOperator<T>& a, const SymmetricOperator<T>& b, cplx z,
                      double tol, int max_iter)
      : a_(a), b_(b), z_(z), tol_(tol), max_iter_(max_iter) {}

  void solve_in_place(DenseMatrix<cplx>& rhs, SolveMode mode) const override {
    const cplx z = mode == SolveMode::Normal ? z_ : std::conj(z_);
    const int n = rhs.rows();
    DenseMatrix<cplx> x(n, 1), r(n, 1), r0(n, 1), p(n, 1), v(n, 1), s(n, 1), t(n, 1);
    for (int c = 0; c < rhs.cols(); ++c) {
      cplx* bcol = rhs.col(c);
      double bnorm = 0.0;
      for (int i = 0; i < n; ++i) bnorm += std::norm(bcol[i]);
      bnorm = std::sqrt(bnorm);
      if (bnorm == 0.0) {
        for (int i = 0; i < n; ++i) bcol[i] = cplx{};
        continue;
      }
      for (int i = 0; i < n; ++i) {
        x(i, 0) = cplx{};
        r(i, 0) = bcol[i];
        r0(i, 0) = bcol[i];
        p(i, 0) = cplx{};
        v(i, 0) = cplx{};
      }
      cplx rho{1.0}, alpha{1.0}, omega{1.0};
      double rnorm = bnorm;
      for (int it = 0; it < max_iter_ && rnorm > tol_ * bnorm; ++it) {
        const cplx rho_next = dot(r0, r);
        if (std::abs(rho_next) < 1e-290 || std::abs(omega) < 1e-290) {
          // Stagnation: restart from the current residual.
          for (int i = 0; i < n; ++i) {
            r0(i, 0) = r(i, 0);
            p(i, 0) = cplx{};
            v(i, 0) = cplx{};
          }
          rho = alpha = omega = cplx{1.0};
          continue;
        }
        const cplx beta = (rho_next / rho) * (alpha / omega);
        rho = rho_next;
        for (int i = 0; i < n; ++i)
          p(i, 0) = r(i, 0) + beta * (p(i, 0) - omega * v(i, 0));
        apply_shifted(z, p, v);
        alpha = rho / dot(r0, v);
        for (int i = 0; i < n; ++i) s(i, 0) = r(i, 0) - alpha * v(i, 0);
        apply_shifted(z, s, t);
        const double tt = norm2sq(t);
        omega = tt > 0.0 ? dot(t, s) / tt : cplx{};
        for (int i = 0; i < n; ++i) {
          x(i, 0) += alpha * p(i, 0) + omega * s(i, 0);
          r(i, 0) = s(i, 0) - omega * t(i, 0);
        }
        rnorm = std::sqrt(norm2sq(r));
      }
      if (rnorm > tol_ * bnorm)
        throw NumericalError("BicgstabShiftSystem: inner solve did not reach tolerance");
      for (int i = 0; i < n; ++i) bcol[i] = x(i, 0);
    }
  }

 private:
  void apply_shifted(cplx z, const DenseMatrix<cplx>& in, DenseMatrix<cplx>& out) const {
    DenseMatrix<cplx> av;
    a_.apply_to_complex(in, av);
    b_.apply_to_complex(in, out);
    for (int i = 0; i < in.rows(); ++i) out(i, 0) = z * out(i, 0) - av(i, 0);
  }

  static cplx dot(const DenseMatrix<cplx>& a, const DenseMatrix<cplx>& b) {
    cplx s{};
    for (int i = 0; i < a.rows(); ++i) s += std::conj(a(i, 0)) * b(i, 0);
    return s;
  }

  static double norm2sq(const DenseMatrix<cplx>& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::norm(a(i, 0));
    return s;
  }

  const SymmetricOperator<T>& a_;
  const SymmetricOperator<T>& b_;
  cplx z_;
  double tol_;
  int max_iter_;
};

}  // namespace detail

/// Matrix-free inner solver with a relative residual target. The projection
/// loop compensates for the looser solves by flooring its trace tolerance at
/// the square of this target.
template <typename T>
class IterativeSolver final : public InnerSolver<T> {
 public:
  IterativeSolver(const SymmetricOperator<T>& a, const SymmetricOperator<T>& b, double tol,
                  int max_iter = 0)
      : a_(a), b_(b), tol_(tol), max_iter_(max_iter) {
    if (a.n() != b.n()) throw InputError("IterativeSolver: operator dimensions differ");
    if (!(tol > 0.0) || tol >= 1.0)
      throw InputError("IterativeSolver: tolerance must be in (0, 1)");
    if (max_iter_ <= 0) max_iter_ = std::max(1000, 20 * a.n());
  }

  std::unique_ptr<ShiftSystem> prepare(cplx z) const override {
    return std::make_unique<detail::BicgstabShiftSystem<T>>(a_, b_, z, tol_, max_iter_);
  }

  double residual_target() const override { return tol_; }

 private:
  const SymmetricOperator<T>& a_;
  const SymmetricOperator<T>& b_;
  double tol_;
  int max_iter_;
};

}  // namespace feast

// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "feast/eigh.hpp"
#include "feast/inner_solver.hpp"
#include "feast/quadrature.hpp"
#include "feast/residual.hpp"

namespace feast {

using quadrature::Contour;

struct FeastConfig {
  int m0 = 0;                  // subspace size, at least the expected count
  int n_e = 8;                 // contour quadrature points
  double trace_tol = 1e-13;    // relative trace stagnation target
  int max_loops = 20;          // refinement loop budget
  std::uint64_t seed = 42;     // start-block seed
  int threads = 1;             // worker threads across contour points
  bool low_memory = false;     // refactorize per loop instead of caching
};

enum class FeastStatus {
  Converged,
  MaxLoops,
  NoEigenvaluesInInterval,
  SubspaceSaturated,
  SubspaceBreakdown,
};

inline std::string to_string(FeastStatus s) {
  switch (s) {
    case FeastStatus::Converged: return "converged";
    case FeastStatus::MaxLoops: return "max-loops";
    case FeastStatus::NoEigenvaluesInInterval: return "no-eigenvalues-in-interval";
    case FeastStatus::SubspaceSaturated: return "subspace-saturated";
    case FeastStatus::SubspaceBreakdown: return "subspace-breakdown";
  }
  return "unknown";
}

struct FeastTimings {
  double factorize_s = 0.0;
  double solve_s = 0.0;
  double reduce_s = 0.0;
  double total_s = 0.0;
};

template <typename T>
struct FeastResult {
  std::vector<double> eigenvalues;  // inside the interval, ascending
  DenseMatrix<T> eigenvectors;      // B-orthonormal columns, paired with eigenvalues
  std::vector<double> residuals;
  /// Marks pairs whose residual is the raw numerator because ||A x||_1 was
  /// numerically zero (eigenvalue at or near zero).
  std::vector<bool> residual_absolute_only;
  double max_residual = 0.0;
  int loops_used = 0;               // refinement re-entries into the contour stage
  std::vector<double> trace_history;
  std::vector<int> in_interval_counts;
  FeastStatus status = FeastStatus::Converged;
  /// Full Ritz block from the last pass; B * subspace seeds a warm start on a
  /// nearby problem.
  DenseMatrix<T> subspace;
  FeastTimings timings;
};

/// Seeded uniform block on [-1, 1), identical on every conforming platform:
/// entries are drawn from std::mt19937_64(seed), each 64-bit word mapped to
/// [0, 1) through its top 53 bits, filled column by column. Complex entries
/// draw the real part first, then the imaginary part.
template <typename T>
DenseMatrix<T> random_block(int n, int m0, std::uint64_t seed) {
  if (n < 1 || m0 < 1) throw InputError("random_block: dimensions must be positive");
  std::mt19937_64 gen(seed);
  auto draw = [&gen]() {
    const double u = static_cast<double>(gen() >> 11) * 0x1p-53;
    return 2.0 * u - 1.0;
  };
  DenseMatrix<T> y(n, m0);
  for (int j = 0; j < m0; ++j) {
    T* col = y.col(j);
    for (int i = 0; i < n; ++i) {
      if constexpr (scalar_traits<T>::is_complex) {
        const double re = draw();
        const double im = draw();
        col[i] = cplx(re, im);
      } else {
        col[i] = draw();
      }
    }
  }
  return y;
}

struct TraceCount {
  double trace = 0.0;
  int count = 0;
};

/// Sum and count of the eigenvalues lying in the closed interval.
inline TraceCount trace_of_in_interval(const std::vector<double>& eigenvalues,
                                       const SearchInterval& interval) {
  TraceCount tc;
  for (double ev : eigenvalues) {
    if (interval.contains(ev)) {
      tc.trace += ev;
      ++tc.count;
    }
  }
  return tc;
}

namespace detail {

/// Runs fn(e) for e in [0, count) on up to `threads` workers. Work items are
/// striped statically so the assignment is reproducible; the first exception
/// is rethrown on the calling thread.
template <typename Fn>
void parallel_points(int count, int threads, Fn&& fn) {
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int e = 0; e < count; ++e) fn(e);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int e = w; e < count; e += workers) {
        try {
          fn(e);
        } catch (...) {
          std::lock_guard<std::mutex> lk(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

/// Contour accumulation for real symmetric pencils: one complex solve per
/// point, combined as Q -= (w_e / 2) * Re(r e^{i theta_e} G(z_e) Y). Per-point
/// contributions are reduced in contour order no matter how many threads run,
/// so results are bit-identical for any thread count.
inline DenseMatrix<double> accumulate_subspace_real(
    const DenseMatrix<double>& y, const Contour& contour,
    const std::vector<const ShiftSystem*>& systems, int threads = 1) {
  const int n_e = static_cast<int>(contour.points.size());
  if (static_cast<int>(systems.size()) != n_e)
    throw InputError("accumulate_subspace: one prepared system per contour point");
  std::vector<DenseMatrix<double>> terms(n_e);
  detail::parallel_points(n_e, threads, [&](int e) {
    const quadrature::ContourPoint& pt = contour.points[e];
    DenseMatrix<cplx> rhs = linalg::to_complex(y);
    systems[e]->solve_in_place(rhs, SolveMode::Normal);
    const cplx coeff = 0.5 * pt.weight * contour.radius *
                       cplx(std::cos(pt.theta), std::sin(pt.theta));
    DenseMatrix<double>& term = terms[e];
    term = DenseMatrix<double>(y.rows(), y.cols());
    for (std::size_t k = 0; k < rhs.data().size(); ++k)
      term.data()[k] = (coeff * rhs.data()[k]).real();
  });
  DenseMatrix<double> q(y.rows(), y.cols());
  for (int e = 0; e < n_e; ++e)
    for (std::size_t k = 0; k < q.data().size(); ++k) q.data()[k] -= terms[e].data()[k];
  return q;
}

/// Hermitian variant: the resolvent is no longer conjugate-symmetric across
/// the real axis, so each point pairs the solve at z_e with the adjoint solve
/// on the same factorization, Q -= (w_e r / 4) (e^{i theta} G + e^{-i theta} G^H) Y.
inline DenseMatrix<cplx> accumulate_subspace_hermitian(
    const DenseMatrix<cplx>& y, const Contour& contour,
    const std::vector<const ShiftSystem*>& systems, int threads = 1) {
  const int n_e = static_cast<int>(contour.points.size());
  if (static_cast<int>(systems.size()) != n_e)
    throw InputError("accumulate_subspace: one prepared system per contour point");
  std::vector<DenseMatrix<cplx>> terms(n_e);
  detail::parallel_points(n_e, threads, [&](int e) {
    const quadrature::ContourPoint& pt = contour.points[e];
    DenseMatrix<cplx> s1 = y;
    systems[e]->solve_in_place(s1, SolveMode::Normal);
    DenseMatrix<cplx> s2 = y;
    systems[e]->solve_in_place(s2, SolveMode::ConjTranspose);
    const double pref = 0.25 * pt.weight * contour.radius;
    const cplx c1 = pref * cplx(std::cos(pt.theta), std::sin(pt.theta));
    const cplx c2 = pref * cplx(std::cos(pt.theta), -std::sin(pt.theta));
    DenseMatrix<cplx>& term = terms[e];
    term = DenseMatrix<cplx>(y.rows(), y.cols());
    for (std::size_t k = 0; k < term.data().size(); ++k)
      term.data()[k] = c1 * s1.data()[k] + c2 * s2.data()[k];
  });
  DenseMatrix<cplx> q(y.rows(), y.cols());
  for (int e = 0; e < n_e; ++e)
    for (std::size_t k = 0; k < q.data().size(); ++k) q.data()[k] -= terms[e].data()[k];
  return q;
}

template <typename T>
struct RayleighRitzResult {
  std::vector<double> eigenvalues;  // ascending Ritz values
  DenseMatrix<T> x;                 // Ritz vectors in the full space
  DenseMatrix<T> a_q;
  DenseMatrix<T> b_q;
  bool truncated = false;
};

/// Projects the pencil onto span(Q) and solves the reduced problem. No
/// orthogonalization of Q: the reduced solve handles the conditioning.
template <typename T>
RayleighRitzResult<T> rayleigh_ritz(const SymmetricOperator<T>& a,
                                    const SymmetricOperator<T>& b,
                                    const DenseMatrix<T>& q) {
  RayleighRitzResult<T> r;
  r.a_q = linalg::hermitian_part(linalg::adjoint_matmul(q, a.apply(q)));
  r.b_q = linalg::hermitian_part(linalg::adjoint_matmul(q, b.apply(q)));
  linalg::ReducedEig<T> red = linalg::reduced_gevp(r.a_q, r.b_q);
  r.eigenvalues = std::move(red.eigenvalues);
  r.x = linalg::matmul(q, red.phi);
  r.truncated = red.truncated;
  return r;
}

namespace detail {

template <typename T>
DenseMatrix<T> accumulate_dispatch(const DenseMatrix<T>& y, const Contour& contour,
                                   const std::vector<const ShiftSystem*>& systems,
                                   int threads) {
  if constexpr (scalar_traits<T>::is_complex)
    return accumulate_subspace_hermitian(y, contour, systems, threads);
  else
    return accumulate_subspace_real(y, contour, systems, threads);
}

}  // namespace detail

/// Contour-projection eigensolver for A x = lambda B x on a closed interval,
/// with A symmetric (Hermitian) and B symmetric positive definite. Runs the
/// accumulate / Rayleigh-Ritz pass repeatedly, feeding B times the Ritz block
/// back in, until the in-interval trace stagnates at trace_tol.
///
/// loops_used counts the refinement re-entries: a run whose first pass is
/// already confirmed stationary by the second reports 1, and trace_history
/// always holds loops_used + 1 entries.
template <typename T>
FeastResult<T> feast_solve(const SymmetricOperator<T>& a, const SymmetricOperator<T>& b,
                           const SearchInterval& interval, const FeastConfig& config,
                           const InnerSolver<T>* solver = nullptr,
                           const DenseMatrix<T>* initial_y = nullptr) {
  const auto t_start = std::chrono::steady_clock::now();
  auto seconds_since = [](std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  if (a.n() != b.n()) throw InputError("feast_solve: operator dimensions differ");
  const int n = a.n();
  if (n < 1) throw InputError("feast_solve: empty operator");
  if (config.m0 < 1 || config.m0 > n)
    throw InputError("feast_solve: m0 must be in [1, n]");
  if (config.m0 > linalg::kMaxReducedDimension)
    throw InputError("feast_solve: m0 exceeds the supported reduced size");
  if (config.max_loops < 1) throw InputError("feast_solve: max_loops must be positive");
  if (!(config.trace_tol > 0.0)) throw InputError("feast_solve: trace_tol must be positive");
  if (config.threads < 1) throw InputError("feast_solve: threads must be positive");
  if (initial_y && (initial_y->rows() != n || initial_y->cols() < 1 ||
                    initial_y->cols() > config.m0))
    throw InputError("feast_solve: initial block shape mismatch");

  const Contour contour = quadrature::build_contour(interval, config.n_e);

  std::unique_ptr<DirectSolver<T>> default_solver;
  if (!solver) {
    default_solver = std::make_unique<DirectSolver<T>>(a, b);
    solver = default_solver.get();
  }
  // Looser inner solves cap how small a trace movement is observable.
  const double inner = solver->residual_target();
  const double effective_tol = std::max(config.trace_tol, inner * inner);

  FeastResult<T> result;
  DenseMatrix<T> y = initial_y ? *initial_y : random_block<T>(n, config.m0, config.seed);

  std::vector<std::unique_ptr<ShiftSystem>> factors(contour.points.size());
  std::vector<const ShiftSystem*> systems(contour.points.size());
  auto ensure_factors = [&]() {
    if (factors[0]) return;
    const auto t0 = std::chrono::steady_clock::now();
    detail::parallel_points(static_cast<int>(contour.points.size()), config.threads,
                            [&](int e) { factors[e] = solver->prepare(contour.points[e].z); });
    for (std::size_t e = 0; e < factors.size(); ++e) systems[e] = factors[e].get();
    result.timings.factorize_s += seconds_since(t0);
  };

  double prev_trace = 0.0;
  int prev_count = -1;

  auto finalize = [&](FeastStatus status, const RayleighRitzResult<T>& rr, int pass) {
    result.status = status;
    result.loops_used = pass;
    std::vector<int> keep;
    for (std::size_t i = 0; i < rr.eigenvalues.size(); ++i)
      if (interval.contains(rr.eigenvalues[i])) keep.push_back(static_cast<int>(i));
    result.eigenvalues.clear();
    for (int i : keep) result.eigenvalues.push_back(rr.eigenvalues[i]);
    result.eigenvectors = linalg::select_columns(rr.x, keep);
    result.subspace = rr.x;
    linalg::ResidualReport rep =
        linalg::residual_norms(a, b, result.eigenvalues, result.eigenvectors);
    result.residuals = std::move(rep.values);
    result.residual_absolute_only = std::move(rep.absolute_only);
    result.max_residual = rep.max_value;
    result.timings.total_s = seconds_since(t_start);
  };

  for (int pass = 0; pass <= config.max_loops; ++pass) {
    if (config.low_memory)
      for (auto& f : factors) f.reset();
    ensure_factors();

    const auto t_solve = std::chrono::steady_clock::now();
    DenseMatrix<T> q = detail::accumulate_dispatch(y, contour, systems, config.threads);
    result.timings.solve_s += seconds_since(t_solve);

    const auto t_reduce = std::chrono::steady_clock::now();
    RayleighRitzResult<T> rr;
    try {
      rr = rayleigh_ritz(a, b, q);
    } catch (const SubspaceBreakdown&) {
      result.status = FeastStatus::SubspaceBreakdown;
      result.loops_used = pass;
      result.timings.reduce_s += seconds_since(t_reduce);
      result.timings.total_s = seconds_since(t_start);
      return result;
    }
    result.timings.reduce_s += seconds_since(t_reduce);

    const TraceCount tc = trace_of_in_interval(rr.eigenvalues, interval);
    result.trace_history.push_back(tc.trace);
    result.in_interval_counts.push_back(tc.count);

    // Every requested direction landed inside the interval: the block had no
    // room to spare, so the count cannot be trusted as complete.
    if (tc.count == config.m0) {
      finalize(FeastStatus::SubspaceSaturated, rr, pass);
      return result;
    }

    if (pass >= 1) {
      if (tc.count == 0 && prev_count == 0) {
        finalize(FeastStatus::NoEigenvaluesInInterval, rr, pass);
        return result;
      }
      const double denom = std::max(std::abs(tc.trace), interval.width());
      if (tc.count == prev_count &&
          std::abs(tc.trace - prev_trace) <= effective_tol * denom) {
        finalize(FeastStatus::Converged, rr, pass);
        return result;
      }
    }

    if (pass == config.max_loops) {
      finalize(FeastStatus::MaxLoops, rr, pass);
      return result;
    }

    prev_trace = tc.trace;
    prev_count = tc.count;
    y = b.apply(rr.x);
  }

  throw Error("feast_solve: unreachable");
}

}  // namespace feast

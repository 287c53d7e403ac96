// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "feast/run.hpp"

#include <algorithm>
#include <memory>

namespace feast::harness {

namespace {

template <typename T>
RunReport solve_pencil(const SymmetricOperator<T>& a, const SymmetricOperator<T>& b,
                       const ProblemSpec& spec, const DenseMatrix<T>* initial_y,
                       FeastResult<T>* result_out) {
  const SearchInterval interval(spec.lambda_min, spec.lambda_max);

  std::unique_ptr<InnerSolver<T>> solver;
  if (spec.solver.kind == SolverChoice::Kind::Iterative)
    solver = std::make_unique<IterativeSolver<T>>(a, b, spec.solver.iterative_tol);

  FeastResult<T> res =
      feast_solve<T>(a, b, interval, spec.config, solver.get(), initial_y);

  RunReport rep;
  rep.n = a.n();
  rep.nnz = a.nnz();
  rep.lambda_min = spec.lambda_min;
  rep.lambda_max = spec.lambda_max;
  rep.m0 = spec.config.m0;
  rep.ne = spec.config.n_e;
  rep.loops = res.loops_used;
  rep.status = to_string(res.status);
  rep.eigenvalues = res.eigenvalues;
  rep.residuals = res.residuals;
  rep.max_residual = res.max_residual;
  rep.trace_history = res.trace_history;
  rep.in_interval_counts = res.in_interval_counts;
  rep.timings = res.timings;
  rep.seed = spec.config.seed;
  rep.source = spec.source;
  if (result_out) *result_out = std::move(res);
  return rep;
}

void check_one_pencil(const ProblemSpec& spec) {
  if (spec.real_pencil.has_value() == spec.hermitian_pencil.has_value())
    throw InputError("ProblemSpec: exactly one pencil must be set");
}

}  // namespace

RunReport run_solve(const ProblemSpec& spec) {
  check_one_pencil(spec);
  if (spec.real_pencil)
    return solve_pencil<double>(spec.real_pencil->first, spec.real_pencil->second, spec,
                                nullptr, nullptr);
  return solve_pencil<cplx>(spec.hermitian_pencil->first, spec.hermitian_pencil->second,
                            spec, nullptr, nullptr);
}

std::vector<RunReport> run_sweep(const ProblemSpec& base, const SymmetricOperator<double>& s,
                                 const std::vector<double>& steps) {
  check_one_pencil(base);
  if (!base.real_pencil)
    throw InputError("run_sweep: sweeps are defined for real pencils");
  if (steps.empty()) throw InputError("run_sweep: no steps given");
  const SymmetricOperator<double>& a0 = base.real_pencil->first;
  const SymmetricOperator<double>& b = base.real_pencil->second;
  if (s.n() != a0.n()) throw InputError("run_sweep: perturbation dimension mismatch");

  std::vector<RunReport> reports;
  reports.reserve(steps.size());
  DenseMatrix<double> warm;  // empty means cold start
  bool have_warm = false;

  for (std::size_t k = 0; k < steps.size(); ++k) {
    ProblemSpec spec = base;
    spec.real_pencil->first = linalg::add_scaled(a0, s, steps[k]);
    spec.source = base.source + " + " + std::to_string(steps[k]) + "*S";

    FeastResult<double> res;
    RunReport rep;
    try {
      rep = solve_pencil<double>(spec.real_pencil->first, b, spec,
                                 have_warm ? &warm : nullptr, &res);
    } catch (const NumericalError& err) {
      rep.n = a0.n();
      rep.nnz = spec.real_pencil->first.nnz();
      rep.lambda_min = spec.lambda_min;
      rep.lambda_max = spec.lambda_max;
      rep.m0 = spec.config.m0;
      rep.ne = spec.config.n_e;
      rep.status = std::string("error: ") + err.what();
      rep.seed = spec.config.seed;
      rep.source = spec.source;
      reports.push_back(std::move(rep));
      have_warm = false;
      continue;
    }
    reports.push_back(rep);

    if (res.status == FeastStatus::Converged && res.subspace.cols() > 0) {
      // Warm start for the next step: B times the Ritz block, topped up with
      // fresh seeded columns if truncation shrank it below m0.
      DenseMatrix<double> block = res.subspace;
      if (block.cols() < base.config.m0) {
        DenseMatrix<double> pad = random_block<double>(
            block.rows(), base.config.m0 - block.cols(),
            base.config.seed + 1000003ull * (k + 1));
        DenseMatrix<double> widened(block.rows(), base.config.m0);
        std::copy(block.data().begin(), block.data().end(), widened.data().begin());
        std::copy(pad.data().begin(), pad.data().end(),
                  widened.data().begin() + block.data().size());
        block = std::move(widened);
      }
      warm = b.apply(block);
      have_warm = true;
    } else {
      have_warm = false;
    }
  }
  return reports;
}

ProblemSpec demo_problem() {
  std::vector<linalg::Triplet<double>> t;
  for (int i = 0; i < 10; ++i) t.push_back({i, i, static_cast<double>(i + 1)});
  ProblemSpec spec;
  spec.real_pencil = {SymmetricOperator<double>::from_triplets(10, std::move(t),
                                                               linalg::TripletLayout::Full),
                      SymmetricOperator<double>::identity(10)};
  spec.lambda_min = 0.5;
  spec.lambda_max = 3.5;
  spec.config.m0 = 6;
  spec.source = "demo:diag(1..10)";
  return spec;
}

int status_exit_code(const std::string& status) {
  if (status == "converged" || status == "no-eigenvalues-in-interval") return 0;
  if (status == "max-loops") return 2;
  if (status == "subspace-saturated") return 3;
  return 5;
}

}  // namespace feast::harness

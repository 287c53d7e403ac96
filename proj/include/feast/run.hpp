// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "feast/core.hpp"
#include "feast/report.hpp"

namespace feast::harness {

struct SolverChoice {
  enum class Kind { Direct, Iterative };
  Kind kind = Kind::Direct;
  double iterative_tol = 1e-3;
};

/// A fully specified solve: exactly one pencil (real or Hermitian), the
/// search interval and the solver knobs.
struct ProblemSpec {
  std::optional<std::pair<SymmetricOperator<double>, SymmetricOperator<double>>> real_pencil;
  std::optional<std::pair<SymmetricOperator<cplx>, SymmetricOperator<cplx>>> hermitian_pencil;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  FeastConfig config;
  SolverChoice solver;
  std::string source;
};

RunReport run_solve(const ProblemSpec& spec);

/// Continuation run over A + t_k * S: each step seeds the next with B times
/// the previous Ritz block (topped up with seeded random columns when the
/// block shrank). A failed step reports its status and the next step falls
/// back to a cold start.
std::vector<RunReport> run_sweep(const ProblemSpec& base,
                                 const SymmetricOperator<double>& s,
                                 const std::vector<double>& steps);

/// Small built-in pencil (diagonal stiffness against identity mass) used by
/// golden-file tests: diag(1..10), interval [0.5, 3.5], m0 = 6.
ProblemSpec demo_problem();

/// Process exit code for a report status: 0 converged or empty interval,
/// 2 loop budget exhausted, 3 saturated subspace, 5 numerical breakdown.
int status_exit_code(const std::string& status);

}  // namespace feast::harness

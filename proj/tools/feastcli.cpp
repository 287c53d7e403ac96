// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line harness: solve a pencil from Matrix Market files, generate
// grid problems, replicate pencils for scaling runs, or sweep a perturbation
// with warm starts. Reports are JSON on stdout or --out.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "feast/generators.hpp"
#include "feast/matrix_market.hpp"
#include "feast/run.hpp"

namespace {

using namespace feast;
using namespace feast::harness;

struct SolveFlags {
  std::string a_path;
  std::string b_path;
  double lmin = 0.0;
  double lmax = 0.0;
  int m0 = 0;
  int ne = 8;
  double trace_tol = 1e-13;
  int max_loops = 20;
  std::uint64_t seed = 42;
  std::string klass = "real";
  int threads = 1;
  double inner_tol = 0.0;  // 0 = direct factorization
  bool low_memory = false;
  std::string out_path;
  std::string csv_path;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f, bool with_files) {
  if (with_files) {
    cmd->add_option("--a", f.a_path, "stiffness matrix (Matrix Market)")->required();
    cmd->add_option("--b", f.b_path, "mass matrix; identity when omitted");
  }
  cmd->add_option("--lmin", f.lmin, "interval lower endpoint")->required();
  cmd->add_option("--lmax", f.lmax, "interval upper endpoint")->required();
  cmd->add_option("--m0", f.m0, "subspace size")->required();
  cmd->add_option("--ne", f.ne, "contour points")->capture_default_str();
  cmd->add_option("--trace-tol", f.trace_tol, "trace stagnation tolerance")
      ->capture_default_str();
  cmd->add_option("--max-loops", f.max_loops, "refinement loop budget")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "start block seed")->capture_default_str();
  cmd->add_option("--class", f.klass, "pencil class: real | hermitian")
      ->check(CLI::IsMember({"real", "hermitian"}))
      ->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker threads over contour points")
      ->capture_default_str();
  cmd->add_option("--inner-tol", f.inner_tol,
                  "iterative inner-solve tolerance; 0 means direct")
      ->capture_default_str();
  cmd->add_flag("--low-memory", f.low_memory, "refactorize every loop");
  cmd->add_option("--out", f.out_path, "report path; stdout when omitted");
  cmd->add_option("--csv", f.csv_path, "also write an eigenpair table");
}

ProblemSpec build_spec(const SolveFlags& f) {
  ProblemSpec spec;
  if (f.klass == "real") {
    SymmetricOperator<double> a = load_matrix_market_real(f.a_path);
    SymmetricOperator<double> b = f.b_path.empty()
                                      ? SymmetricOperator<double>::identity(a.n())
                                      : load_matrix_market_real(f.b_path);
    spec.real_pencil = {std::move(a), std::move(b)};
  } else {
    SymmetricOperator<cplx> a = load_matrix_market_hermitian(f.a_path);
    SymmetricOperator<cplx> b = f.b_path.empty()
                                    ? SymmetricOperator<cplx>::identity(a.n())
                                    : load_matrix_market_hermitian(f.b_path);
    spec.hermitian_pencil = {std::move(a), std::move(b)};
  }
  spec.lambda_min = f.lmin;
  spec.lambda_max = f.lmax;
  spec.config.m0 = f.m0;
  spec.config.n_e = f.ne;
  spec.config.trace_tol = f.trace_tol;
  spec.config.max_loops = f.max_loops;
  spec.config.seed = f.seed;
  spec.config.threads = f.threads;
  spec.config.low_memory = f.low_memory;
  if (f.inner_tol > 0.0) {
    spec.solver.kind = SolverChoice::Kind::Iterative;
    spec.solver.iterative_tol = f.inner_tol;
  }
  spec.source = f.a_path;
  return spec;
}

void emit_json(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot write report: " + out_path);
  out << j.dump(2) << "\n";
}

void emit_csv(const RunReport& rep, const std::string& csv_path) {
  if (csv_path.empty()) return;
  std::ofstream out(csv_path);
  if (!out) throw InputError("cannot write csv: " + csv_path);
  write_report_csv(out, rep);
}

std::vector<double> parse_steps(const std::string& steps) {
  std::vector<double> out;
  std::stringstream ss(steps);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw InputError("sweep: bad step value '" + tok + "'");
    }
    if (used != tok.size()) throw InputError("sweep: bad step value '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("sweep: no steps given");
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"contour-projection eigensolver harness"};
  app.require_subcommand(1);

  SolveFlags sf;
  CLI::App* solve = app.add_subcommand("solve", "solve A x = lambda B x on an interval");
  add_solve_flags(solve, sf, true);

  std::string gen_kind = "fd";
  int gen_nx = 0, gen_ny = 0;
  std::string gen_out_a, gen_out_b;
  CLI::App* generate = app.add_subcommand("generate", "write a grid Laplacian pencil");
  generate->add_option("--kind", gen_kind, "fd | fem")
      ->check(CLI::IsMember({"fd", "fem"}))
      ->capture_default_str();
  generate->add_option("--nx", gen_nx, "grid size x")->required();
  generate->add_option("--ny", gen_ny, "grid size y")->required();
  generate->add_option("--out-a", gen_out_a, "stiffness output path")->required();
  generate->add_option("--out-b", gen_out_b, "mass output path");

  std::string rep_a, rep_b, rep_out_a, rep_out_b;
  int rep_k = 0;
  CLI::App* replicate_cmd = app.add_subcommand("replicate", "direct sum of k pencil copies");
  replicate_cmd->add_option("--a", rep_a, "stiffness input")->required();
  replicate_cmd->add_option("--b", rep_b, "mass input");
  replicate_cmd->add_option("--k", rep_k, "copy count")->required();
  replicate_cmd->add_option("--out-a", rep_out_a, "stiffness output")->required();
  replicate_cmd->add_option("--out-b", rep_out_b, "mass output");

  SolveFlags wf;
  std::string sweep_s, sweep_steps;
  CLI::App* sweep = app.add_subcommand("sweep", "warm-started runs over A + t*S");
  sweep->add_option("--a", wf.a_path, "stiffness matrix")->required();
  sweep->add_option("--s", sweep_s, "perturbation matrix")->required();
  sweep->add_option("--b", wf.b_path, "mass matrix; identity when omitted");
  sweep->add_option("--steps", sweep_steps, "comma-separated t values")->required();
  add_solve_flags(sweep, wf, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (solve->parsed()) {
      const RunReport rep = run_solve(build_spec(sf));
      emit_json(report_to_json(rep), sf.out_path);
      emit_csv(rep, sf.csv_path);
      return status_exit_code(rep.status);
    }
    if (generate->parsed()) {
      auto [a, b] = gen_kind == "fd" ? gen_laplacian_fd(gen_nx, gen_ny)
                                     : gen_laplacian_fem(gen_nx, gen_ny);
      save_matrix_market(gen_out_a, a);
      if (!gen_out_b.empty()) save_matrix_market(gen_out_b, b);
      return 0;
    }
    if (replicate_cmd->parsed()) {
      SymmetricOperator<double> a = load_matrix_market_real(rep_a);
      SymmetricOperator<double> b = rep_b.empty()
                                        ? SymmetricOperator<double>::identity(a.n())
                                        : load_matrix_market_real(rep_b);
      auto [ak, bk] = harness::replicate(a, b, rep_k);
      save_matrix_market(rep_out_a, ak);
      if (!rep_out_b.empty()) save_matrix_market(rep_out_b, bk);
      return 0;
    }
    if (sweep->parsed()) {
      if (wf.klass != "real")
        throw InputError("sweep: only the real class is supported");
      ProblemSpec base = build_spec(wf);
      const SymmetricOperator<double> s = load_matrix_market_real(sweep_s);
      const std::vector<RunReport> reps = run_sweep(base, s, parse_steps(sweep_steps));
      nlohmann::json arr = nlohmann::json::array();
      int worst = 0;
      for (const auto& rep : reps) {
        arr.push_back(report_to_json(rep));
        worst = std::max(worst, status_exit_code(rep.status));
      }
      emit_json(arr, wf.out_path);
      return worst;
    }
  } catch (const InputError& e) {
    nlohmann::json j{{"status", "error"}, {"message", e.what()}};
    std::cout << j.dump(2) << "\n";
    return 4;
  } catch (const NumericalError& e) {
    nlohmann::json j{{"status", "error"}, {"message", e.what()}};
    std::cout << j.dump(2) << "\n";
    return 5;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }

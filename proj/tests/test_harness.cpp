// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "feast/generators.hpp"
#include "feast/matrix_market.hpp"
#include "feast/oracle.hpp"
#include "feast/run.hpp"
#include "test_util.hpp"

using namespace feast;
using namespace feast::harness;
using linalg::DenseMatrix;
using linalg::SymmetricOperator;
using linalg::Triplet;
using linalg::TripletLayout;

namespace {

namespace fs = std::filesystem;

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("feastlite_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

template <typename T>
void check_dense_equal(const SymmetricOperator<T>& a, const SymmetricOperator<T>& b) {
  REQUIRE(a.n() == b.n());
  const DenseMatrix<T> da = a.to_dense();
  const DenseMatrix<T> db = b.to_dense();
  for (std::size_t k = 0; k < da.data().size(); ++k) CHECK(da.data()[k] == db.data()[k]);
}

// Structural subset of JSON Schema (type, required, properties, items,
// additionalProperties, pattern, minimum): just enough to hold the shipped
// report contract against generated output.
bool schema_accepts(const nlohmann::json& schema, const nlohmann::json& value,
                    std::string* why) {
  if (schema.contains("type")) {
    const std::string t = schema["type"].get<std::string>();
    const bool ok = (t == "object" && value.is_object()) ||
                    (t == "array" && value.is_array()) ||
                    (t == "string" && value.is_string()) ||
                    (t == "integer" && value.is_number_integer()) ||
                    (t == "number" && value.is_number()) ||
                    (t == "boolean" && value.is_boolean());
    if (!ok) {
      *why = "expected type " + t;
      return false;
    }
  }
  if (schema.contains("pattern") && value.is_string() &&
      !std::regex_match(value.get<std::string>(),
                        std::regex(schema["pattern"].get<std::string>()))) {
    *why = "pattern mismatch on \"" + value.get<std::string>() + "\"";
    return false;
  }
  if (schema.contains("minimum") && value.is_number() &&
      value.get<double>() < schema["minimum"].get<double>()) {
    *why = "below minimum";
    return false;
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& k : schema["required"]) {
        if (!value.contains(k.get<std::string>())) {
          *why = "missing required key " + k.get<std::string>();
          return false;
        }
      }
    }
    const bool closed = schema.contains("additionalProperties") &&
                        schema["additionalProperties"].is_boolean() &&
                        !schema["additionalProperties"].get<bool>();
    for (const auto& [k, v] : value.items()) {
      if (schema.contains("properties") && schema["properties"].contains(k)) {
        if (!schema_accepts(schema["properties"][k], v, why)) {
          *why = k + ": " + *why;
          return false;
        }
      } else if (closed) {
        *why = "unexpected key " + k;
        return false;
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (const auto& item : value) {
      if (!schema_accepts(schema["items"], item, why)) {
        *why = "item: " + *why;
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("matrix files round-trip bit-exactly") {
  const std::string path = temp_path("roundtrip_real.mtx");

  const auto [a, b] = gen_laplacian_fd(4, 3);
  (void)b;
  // Stress the 17-digit formatting with awkward values.
  std::vector<Triplet<double>> t;
  for (int i = 0; i < 5; ++i) {
    t.push_back({i, i, std::sqrt(2.0) * (i + 1)});
    if (i > 0) t.push_back({i, i - 1, -1.0 / 3.0 * i});
  }
  const auto awkward = SymmetricOperator<double>::from_triplets(
      5, std::move(t), TripletLayout::MirrorOffDiagonal);

  for (const auto* op : {&a, &awkward}) {
    save_matrix_market(path, *op);
    const auto back = load_matrix_market_real(path);
    check_dense_equal(*op, back);
  }

  const std::string hpath = temp_path("roundtrip_herm.mtx");
  const auto h = testutil::random_hermitian(6, 321);
  save_matrix_market(hpath, h);
  const auto hback = load_matrix_market_hermitian(hpath);
  check_dense_equal(h, hback);

  fs::remove(path);
  fs::remove(hpath);
}

TEST_CASE("stored triangles, duplicates and promotion behave as documented") {
  const std::string path = temp_path("triangle.mtx");

  write_file(path,
             "%%MatrixMarket matrix coordinate real symmetric\n"
             "2 2 3\n"
             "1 1 2\n"
             "2 1 1\n"
             "2 2 2\n");
  const auto lower = load_matrix_market_real(path);
  CHECK(lower.entry(0, 0) == 2.0);
  CHECK(lower.entry(0, 1) == 1.0);
  CHECK(lower.entry(1, 0) == 1.0);
  CHECK(lower.entry(1, 1) == 2.0);

  write_file(path,
             "%%MatrixMarket matrix coordinate real symmetric\n"
             "% comment to skip\n"
             "2 2 4\n"
             "1 1 2.0\n"
             "1 1 3.0\n"
             "1 2 7.0\n"
             "2 2 1.0\n");
  const auto dup = load_matrix_market_real(path);
  CHECK(dup.entry(0, 0) == 5.0);
  CHECK(dup.entry(1, 0) == 7.0);

  // A real symmetric file is accepted by the Hermitian loader as-is.
  const auto promoted = load_matrix_market_hermitian(path);
  CHECK(promoted.entry(0, 0) == cplx(5.0, 0.0));
  CHECK(promoted.entry(0, 1) == cplx(7.0, 0.0));

  fs::remove(path);
}

TEST_CASE("malformed matrix files are rejected with the offending line") {
  const std::string path = temp_path("bad.mtx");
  auto expect_real_error = [&](const std::string& text, const std::string& needle) {
    write_file(path, text);
    try {
      load_matrix_market_real(path);
      FAIL_CHECK("expected InputError for: " << needle);
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_real_error("%%NotMatrixMarket x\n1 1 1\n1 1 1\n", "banner");
  expect_real_error("%%MatrixMarket matrix array real symmetric\n", "coordinate");
  expect_real_error("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n",
                    "symmetry flag mismatch");
  expect_real_error("%%MatrixMarket matrix coordinate complex hermitian\n"
                    "1 1 1\n1 1 1 0\n",
                    "real symmetric input required");
  expect_real_error("%%MatrixMarket matrix coordinate real symmetric\n2 3 1\n1 1 1\n",
                    "not square");
  expect_real_error("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n3 1 1\n",
                    ":3: index out of range");
  expect_real_error("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1\n",
                    "unexpected end of file");
  expect_real_error("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 x 1\n",
                    ":3: malformed entry");

  write_file(path,
             "%%MatrixMarket matrix coordinate complex hermitian\n"
             "2 2 1\n"
             "2 1 1.0\n");
  CHECK_THROWS_AS(load_matrix_market_hermitian(path), InputError);

  CHECK_THROWS_AS(load_matrix_market_real(temp_path("does_not_exist.mtx")), InputError);
  fs::remove(path);
}

TEST_CASE("difference-operator generator matches its closed-form spectrum") {
  auto [a2, b2] = gen_laplacian_fd(2, 2);
  CHECK(a2.n() == 4);
  for (int i = 0; i < 4; ++i) CHECK(a2.entry(i, i) == 4.0);
  check_dense_equal(b2, SymmetricOperator<double>::identity(4));

  const std::vector<double> ev2 = fd_laplacian_eigenvalues(2, 2);
  REQUIRE(ev2.size() == 4);
  CHECK(std::abs(ev2[0] - 2.0) <= 1e-14);
  CHECK(std::abs(ev2[3] - 6.0) <= 1e-14);

  // Rows of nodes with all four neighbors present sum to zero.
  auto [a4, b4] = gen_laplacian_fd(4, 4);
  (void)b4;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      const int row = i * 4 + j;
      double sum = 0.0;
      for (int c = 0; c < 16; ++c) sum += a4.entry(row, c);
      CHECK(sum == 0.0);
    }

  auto [a, b] = gen_laplacian_fd(5, 4);
  const oracle::Spectrum<double> s = oracle::reference_gevp(a, b);
  const std::vector<double> exact = fd_laplacian_eigenvalues(5, 4);
  REQUIRE(s.eigenvalues.size() == exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i)
    CHECK(std::abs(s.eigenvalues[i] - exact[i]) <= 1e-12);

  CHECK_THROWS_AS(gen_laplacian_fd(1, 3), InputError);
  CHECK_THROWS_AS(gen_laplacian_fd(400, 400), InputError);
}

TEST_CASE("element-mesh pencil is definite and refines toward the continuum") {
  auto [a6, b6] = gen_laplacian_fem(6, 6);
  CHECK_NOTHROW(linalg::cholesky(b6.to_dense()));

  const oracle::Spectrum<double> coarse = oracle::reference_gevp(a6, b6);
  for (double ev : coarse.eigenvalues) CHECK(ev > 0.0);

  auto [a12, b12] = gen_laplacian_fem(12, 12);
  const oracle::Spectrum<double> fine = oracle::reference_gevp(a12, b12);

  const double continuum = 2.0 * M_PI * M_PI;
  const double err_coarse = std::abs(coarse.eigenvalues[0] - continuum) / continuum;
  const double err_fine = std::abs(fine.eigenvalues[0] - continuum) / continuum;
  CHECK(err_fine < err_coarse);
  CHECK(err_fine <= 0.05);

  // At 40x40 the lowest mode sits within 5% of the continuum value; the mesh
  // is large enough that the solver exercises the banded factorization.
  auto [a40, b40] = gen_laplacian_fem(40, 40);
  FeastConfig cfg;
  cfg.m0 = 6;
  const FeastResult<double> r = feast_solve(a40, b40, SearchInterval(10.0, 35.0), cfg);
  REQUIRE(r.status == FeastStatus::Converged);
  REQUIRE(r.eigenvalues.size() == 1);
  CHECK(std::abs(r.eigenvalues[0] - continuum) / continuum <= 0.05);
}

TEST_CASE("replication repeats the spectrum blockwise") {
  const auto base_a = SymmetricOperator<double>::from_triplets(
      2, {{0, 0, 1.0}, {1, 1, 2.0}}, TripletLayout::Full);
  const auto base_b = SymmetricOperator<double>::identity(2);

  auto [a1, b1] = replicate(base_a, base_b, 1);
  check_dense_equal(a1, base_a);
  check_dense_equal(b1, base_b);

  auto [a2, b2] = replicate(base_a, base_b, 2);
  const oracle::Spectrum<double> s2 = oracle::reference_gevp(a2, b2);
  REQUIRE(s2.eigenvalues.size() == 4);
  CHECK(s2.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s2.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s2.eigenvalues[2] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s2.eigenvalues[3] == doctest::Approx(2.0).epsilon(1e-14));

  auto [fa, fb] = gen_laplacian_fd(3, 3);
  auto [ra, rb] = replicate(fa, fb, 3);
  CHECK(ra.n() == 27);
  CHECK(ra.nnz() == 3 * fa.nnz());
  for (int i = 0; i < 9; ++i) {
    CHECK(ra.entry(i, 9 + i) == 0.0);
    CHECK(ra.entry(i, 18 + i) == 0.0);
  }
  const oracle::Spectrum<double> base_s = oracle::reference_gevp(fa, fb);
  const oracle::Spectrum<double> rep_s = oracle::reference_gevp(ra, rb);
  REQUIRE(rep_s.eigenvalues.size() == 27);
  for (int i = 0; i < 9; ++i)
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs(rep_s.eigenvalues[3 * i + c] - base_s.eigenvalues[i]) <= 1e-11);

  CHECK_THROWS_AS(replicate(base_a, base_b, 0), InputError);
}

TEST_CASE("built-in demo solve reports the known diagonal spectrum") {
  const ProblemSpec spec = demo_problem();
  const RunReport rep = run_solve(spec);

  CHECK(rep.status == "converged");
  CHECK(rep.n == 10);
  CHECK(rep.nnz == 10);
  CHECK(rep.m0 == 6);
  CHECK(rep.ne == 8);
  CHECK(rep.lambda_min == 0.5);
  CHECK(rep.lambda_max == 3.5);
  CHECK(rep.seed == 42);
  CHECK(rep.source == "demo:diag(1..10)");
  REQUIRE(rep.eigenvalues.size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(rep.eigenvalues[i] - (i + 1.0)) <= 1e-13);
  REQUIRE(rep.residuals.size() == 3);
  double worst = 0.0;
  for (double r : rep.residuals) worst = std::max(worst, r);
  CHECK(rep.max_residual == worst);
  CHECK(rep.trace_history.size() == static_cast<std::size_t>(rep.loops) + 1);
  CHECK(rep.in_interval_counts.size() == rep.trace_history.size());
  CHECK(rep.in_interval_counts.back() == 3);
}

TEST_CASE("report serialization has the documented shape and is reproducible") {
  const RunReport rep = run_solve(demo_problem());

  const nlohmann::json j = report_to_json(rep);
  const char* keys[] = {"n",           "nnz",          "lambda_min",
                        "lambda_max",  "m0",           "ne",
                        "loops",       "status",       "eigenvalues",
                        "residuals",   "max_residual", "trace_history",
                        "in_interval_counts", "timings", "seed",
                        "source"};
  for (const char* k : keys) CHECK(j.contains(k));
  CHECK(j.size() == 16);
  CHECK(j["timings"].size() == 4);
  for (const char* k : {"factorize_s", "solve_s", "reduce_s", "total_s"})
    CHECK(j["timings"].contains(k));
  CHECK(j["eigenvalues"].size() == j["residuals"].size());

  const nlohmann::json lean = report_to_json(rep, false);
  CHECK_FALSE(lean.contains("timings"));
  CHECK(lean.size() == 15);

  // Identical configuration implies a byte-identical timing-free report.
  const RunReport rerun = run_solve(demo_problem());
  CHECK(report_to_json(rep, false).dump() == report_to_json(rerun, false).dump());

  std::ostringstream csv;
  write_report_csv(csv, rep);
  std::istringstream lines(csv.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "index,eigenvalue,residual");
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    REQUIRE(c2 != std::string::npos);
    CHECK(std::stoul(line.substr(0, c1)) == static_cast<unsigned>(rows));
    CHECK(std::strtod(line.c_str() + c1 + 1, nullptr) == rep.eigenvalues[rows]);
    CHECK(std::strtod(line.c_str() + c2 + 1, nullptr) == rep.residuals[rows]);
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("reports validate against the shipped schema") {
  std::ifstream in(std::string(FEAST_SOURCE_DIR) + "/docs/run_report.schema.json");
  REQUIRE(in.good());
  const nlohmann::json schema = nlohmann::json::parse(in);

  const RunReport rep = run_solve(demo_problem());
  std::string why;
  CHECK_MESSAGE(schema_accepts(schema, report_to_json(rep), &why), why);
  CHECK_MESSAGE(schema_accepts(schema, report_to_json(rep, false), &why), why);

  // The validator has teeth: contract violations are caught.
  nlohmann::json extra = report_to_json(rep);
  extra["extra_key"] = 1;
  CHECK_FALSE(schema_accepts(schema, extra, &why));
  nlohmann::json missing = report_to_json(rep);
  missing.erase("seed");
  CHECK_FALSE(schema_accepts(schema, missing, &why));
  nlohmann::json bad_status = report_to_json(rep);
  bad_status["status"] = "finished";
  CHECK_FALSE(schema_accepts(schema, bad_status, &why));
  nlohmann::json bad_type = report_to_json(rep);
  bad_type["loops"] = "two";
  CHECK_FALSE(schema_accepts(schema, bad_type, &why));
}

TEST_CASE("continuation sweeps reuse the previous subspace") {
  auto [a, b] = gen_laplacian_fd(6, 6);
  const std::vector<double> exact = fd_laplacian_eigenvalues(6, 6);
  double lo = 0.0, hi = 0.0;
  REQUIRE(testutil::pick_interval(exact, 6, 0.05, &lo, &hi));

  std::vector<Triplet<double>> st;
  for (int i = 0; i < 36; ++i)
    st.push_back({i, i, static_cast<double>(i % 5 - 2)});
  const auto s = SymmetricOperator<double>::from_triplets(36, std::move(st),
                                                          TripletLayout::Full);

  ProblemSpec base;
  base.real_pencil = {a, b};
  base.lambda_min = lo;
  base.lambda_max = hi;
  base.config.m0 = 12;
  base.config.trace_tol = 1e-10;
  base.source = "fd:6x6";

  const std::vector<double> steps = {1e-3, 2e-3, 3e-3};
  const std::vector<RunReport> reports = run_sweep(base, s, steps);
  REQUIRE(reports.size() == 3);

  for (const RunReport& r : reports) {
    CHECK(r.status == "converged");
    CHECK(r.eigenvalues.size() == 6);
    CHECK(r.source.find("*S") != std::string::npos);
  }
  CHECK(reports[1].loops <= reports[0].loops);
  CHECK(reports[2].loops <= reports[0].loops);

  // Final step agrees with an independent dense solve of the shifted pencil.
  const auto a_last = linalg::add_scaled(a, s, steps.back());
  const oracle::Spectrum<double> ref = oracle::reference_gevp(a_last, b);
  std::vector<double> expect;
  for (double ev : ref.eigenvalues)
    if (ev >= lo && ev <= hi) expect.push_back(ev);
  REQUIRE(expect.size() == 6);
  for (int i = 0; i < 6; ++i)
    CHECK(std::abs(reports[2].eigenvalues[i] - expect[i]) <= 1e-10);

  CHECK_THROWS_AS(run_sweep(base, s, {}), InputError);
}

TEST_CASE("report statuses map onto the documented exit codes") {
  CHECK(status_exit_code("converged") == 0);
  CHECK(status_exit_code("no-eigenvalues-in-interval") == 0);
  CHECK(status_exit_code("max-loops") == 2);
  CHECK(status_exit_code("subspace-saturated") == 3);
  CHECK(status_exit_code("subspace-breakdown") == 5);
  CHECK(status_exit_code("error: factorization failed") == 5);
}

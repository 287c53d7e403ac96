// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "feast/core.hpp"

#include <json.hpp>

namespace feast::harness {

/// Flat record of one solve, serialized for downstream tooling. Field names
/// are a stable contract; see docs/run_report.schema.json.
struct RunReport {
  std::int64_t n = 0;
  std::int64_t nnz = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int m0 = 0;
  int ne = 0;
  int loops = 0;
  std::string status;
  std::vector<double> eigenvalues;
  std::vector<double> residuals;
  double max_residual = 0.0;
  std::vector<double> trace_history;
  std::vector<int> in_interval_counts;
  FeastTimings timings;
  std::uint64_t seed = 0;
  std::string source;
};

/// Timings can be excluded to make the serialized form reproducible.
nlohmann::json report_to_json(const RunReport& report, bool include_timings = true);

/// One row per eigenpair: index, eigenvalue, residual.
void write_report_csv(std::ostream& out, const RunReport& report);

}  // namespace feast::harness

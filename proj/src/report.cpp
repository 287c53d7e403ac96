// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "feast/report.hpp"

#include <cstdio>
#include <ostream>

namespace feast::harness {

nlohmann::json report_to_json(const RunReport& r, bool include_timings) {
  nlohmann::json j;
  j["n"] = r.n;
  j["nnz"] = r.nnz;
  j["lambda_min"] = r.lambda_min;
  j["lambda_max"] = r.lambda_max;
  j["m0"] = r.m0;
  j["ne"] = r.ne;
  j["loops"] = r.loops;
  j["status"] = r.status;
  j["eigenvalues"] = r.eigenvalues;
  j["residuals"] = r.residuals;
  j["max_residual"] = r.max_residual;
  j["trace_history"] = r.trace_history;
  j["in_interval_counts"] = r.in_interval_counts;
  if (include_timings) {
    j["timings"] = {{"factorize_s", r.timings.factorize_s},
                    {"solve_s", r.timings.solve_s},
                    {"reduce_s", r.timings.reduce_s},
                    {"total_s", r.timings.total_s}};
  }
  j["seed"] = r.seed;
  j["source"] = r.source;
  return j;
}

void write_report_csv(std::ostream& out, const RunReport& r) {
  out << "index,eigenvalue,residual\n";
  char buf[64];
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i, r.eigenvalues[i],
                  r.residuals[i]);
    out << buf;
  }
}

}  // namespace feast::harness

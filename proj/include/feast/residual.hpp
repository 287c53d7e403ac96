// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "feast/operator.hpp"

namespace feast::linalg {

struct ResidualReport {
  std::vector<double> values;
  double max_value = 0.0;
  /// Set when the matching denominator ||A x||_1 was numerically zero and the
  /// raw numerator was reported instead.
  std::vector<bool> absolute_only;
};

/// Per-pair relative residuals ||A x_i - lambda_i B x_i||_1 / ||A x_i||_1.
///
/// For an eigenvalue at zero the denominator is pure rounding noise: any
/// floating-point image of the exact null vector lands within the rounding
/// floor of the product A x, so the ratio carries no information and sits
/// near 1 for every correct answer. Pairs whose denominator falls at or
/// below that floor report the raw numerator instead and are flagged.
template <typename T>
ResidualReport residual_norms(const SymmetricOperator<T>& a, const SymmetricOperator<T>& b,
                              const std::vector<double>& lambdas, const DenseMatrix<T>& x) {
  if (x.cols() != static_cast<int>(lambdas.size()))
    throw InputError("residual_norms: eigenvalue count must match column count");
  constexpr double kTinyDenominator = 1e-300;
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  ResidualReport rep;
  rep.values.resize(lambdas.size());
  rep.absolute_only.assign(lambdas.size(), false);
  if (lambdas.empty()) return rep;

  const double a_norm = a.norm_one();
  DenseMatrix<T> ax = a.apply(x);
  DenseMatrix<T> bx = b.apply(x);
  for (int j = 0; j < x.cols(); ++j) {
    const T* axj = ax.col(j);
    const T* bxj = bx.col(j);
    const T* xj = x.col(j);
    double num = 0.0;
    double den = 0.0;
    double xnorm = 0.0;
    for (int i = 0; i < x.rows(); ++i) {
      num += std::abs(axj[i] - T{lambdas[j]} * bxj[i]);
      den += std::abs(axj[i]);
      xnorm += std::abs(xj[i]);
    }
    // Backward-error floor of the computed A x: gamma_n * ||A||_1 * ||x||_1.
    const double rounding_floor = 4.0 * x.rows() * kEps * a_norm * xnorm;
    if (den <= std::max(kTinyDenominator, rounding_floor)) {
      rep.values[j] = num;
      rep.absolute_only[j] = true;
    } else {
      rep.values[j] = num / den;
    }
    rep.max_value = std::max(rep.max_value, rep.values[j]);
  }
  return rep;
}

}  // namespace feast::linalg

// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "feast/types.hpp"

namespace feast::quadrature {

constexpr int kMaxPoints = 64;

struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending on (-1, 1)
  std::vector<double> weights;  // positive, sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1]. Nodes are Newton-refined roots of
/// the Legendre recurrence; the rule is exactly symmetric because only the
/// positive half is computed and then mirrored.
GaussLegendreRule gauss_legendre(int n);

struct ContourPoint {
  double node = 0.0;    // Gauss-Legendre abscissa x_e
  double weight = 0.0;  // Gauss-Legendre weight w_e
  double theta = 0.0;   // angle on the upper half-circle, in (0, pi)
  cplx z;               // shift (center + radius * e^{i theta})
};

/// Upper half-circle over a search interval, discretized by Gauss-Legendre.
struct Contour {
  SearchInterval interval;
  double radius = 0.0;
  std::vector<ContourPoint> points;
};

/// Maps the n_e-point rule onto the half-circle with theta_e = -(pi/2)(x_e - 1).
/// Rejects degenerate intervals whose width is at round-off scale.
Contour build_contour(const SearchInterval& interval, int n_e);

}  // namespace feast::quadrature

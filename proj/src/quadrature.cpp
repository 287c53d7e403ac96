// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "feast/quadrature.hpp"

#include <cmath>

namespace feast::quadrature {

namespace {

// P_n(x) and P_n'(x) via the three-term recurrence, in extended precision so
// the rounded nodes and weights land on the nearest double.
void legendre_eval(int n, long double x, long double& p, long double& dp) {
  long double p0 = 1.0L;
  long double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0L);
}

}  // namespace

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1 || n > kMaxPoints)
    throw InputError("gauss_legendre: point count out of supported range");

  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  const long double pi = 3.14159265358979323846264338327950288L;
  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-flavored initial guess for the i-th largest root.
    long double x = std::cos(static_cast<double>(pi * (i + 0.75L) / (n + 0.5L)));
    long double p = 0.0L;
    long double dp = 1.0L;
    for (int iter = 0; iter < 100; ++iter) {
      legendre_eval(n, x, p, dp);
      const long double dx = p / dp;
      x -= dx;
      if (std::abs(static_cast<double>(dx)) <= 1e-15) {
        legendre_eval(n, x, p, dp);
        x -= p / dp;
        break;
      }
    }
    legendre_eval(n, x, p, dp);
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.nodes[i] = -static_cast<double>(x);
    rule.weights[n - 1 - i] = static_cast<double>(w);
    rule.weights[i] = static_cast<double>(w);
  }
  if (n % 2 == 1) {
    long double p, dp;
    legendre_eval(n, 0.0L, p, dp);
    rule.nodes[half] = 0.0;
    rule.weights[half] = static_cast<double>(2.0L / (dp * dp));
  }
  return rule;
}

Contour build_contour(const SearchInterval& interval, int n_e) {
  const double scale = std::max({1.0, std::abs(interval.lambda_min()),
                                 std::abs(interval.lambda_max())});
  if (interval.width() < 1e-12 * scale)
    throw InputError("build_contour: interval is degenerate at round-off scale");

  const GaussLegendreRule rule = gauss_legendre(n_e);
  Contour c{interval, interval.radius(), {}};
  c.points.resize(n_e);
  const double mid = interval.center();
  for (int e = 0; e < n_e; ++e) {
    ContourPoint& pt = c.points[e];
    pt.node = rule.nodes[e];
    pt.weight = rule.weights[e];
    pt.theta = -(M_PI / 2.0) * (pt.node - 1.0);
    pt.z = cplx(mid + c.radius * std::cos(pt.theta), c.radius * std::sin(pt.theta));
  }
  return c;
}

}  // namespace feast::quadrature

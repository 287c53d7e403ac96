// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "feast/quadrature.hpp"

using namespace feast;
using namespace feast::quadrature;

namespace {

// Reference 8-point nodes and weights (positive half), tabulated by direct
// high-precision evaluation of the Legendre recurrence.
constexpr double kNodes8[4] = {0.18343464249564980494, 0.52553240991632898582,
                               0.79666647741362673959, 0.96028985649753623168};
constexpr double kWeights8[4] = {0.36268378337836198297, 0.31370664587788728734,
                                 0.22238103445337447054, 0.10122853629037625915};

double integrate_power(const GaussLegendreRule& rule, int k) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * std::pow(rule.nodes[i], k);
  return s;
}

}  // namespace

TEST_CASE("8-point rule matches the tabulated reference to 1e-15") {
  const GaussLegendreRule r = gauss_legendre(8);
  REQUIRE(r.nodes.size() == 8);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(r.nodes[4 + i] - kNodes8[i]) <= 1e-15);
    CHECK(std::abs(r.nodes[3 - i] + kNodes8[i]) <= 1e-15);
    CHECK(std::abs(r.weights[4 + i] - kWeights8[i]) <= 1e-15);
    CHECK(std::abs(r.weights[3 - i] - kWeights8[i]) <= 1e-15);
  }
}

TEST_CASE("2-point rule is the textbook pair") {
  const GaussLegendreRule r = gauss_legendre(2);
  CHECK(std::abs(r.nodes[1] - 0.57735026918962576451) <= 1e-15);
  CHECK(std::abs(r.nodes[0] + 0.57735026918962576451) <= 1e-15);
  CHECK(r.weights[0] == 1.0);
  CHECK(r.weights[1] == 1.0);
}

TEST_CASE("rules are symmetric, positive, normalized, and ascending") {
  for (int n = 1; n <= 64; ++n) {
    const GaussLegendreRule r = gauss_legendre(n);
    REQUIRE(static_cast<int>(r.nodes.size()) == n);
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) {
      CHECK(r.weights[i] > 0.0);
      wsum += r.weights[i];
      if (i > 0) CHECK(r.nodes[i - 1] < r.nodes[i]);
      // Mirroring is exact by construction.
      CHECK(r.nodes[i] == -r.nodes[n - 1 - i]);
      CHECK(r.weights[i] == r.weights[n - 1 - i]);
    }
    CHECK(std::abs(wsum - 2.0) <= 1e-14);
    CHECK(r.nodes.front() > -1.0);
    CHECK(r.nodes.back() < 1.0);
  }
  CHECK_THROWS_AS(gauss_legendre(0), InputError);
  CHECK_THROWS_AS(gauss_legendre(65), InputError);
}

TEST_CASE("n points integrate polynomials exactly through degree 2n-1") {
  for (int n = 1; n <= 32; ++n) {
    const GaussLegendreRule r = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(integrate_power(r, k) - exact) <= 1e-13);
    }
  }
}

TEST_CASE("contour points sit on the upper half-circle in angle order") {
  const SearchInterval iv(0.0, 2.0);
  const Contour c = build_contour(iv, 8);
  CHECK(c.radius == 1.0);
  REQUIRE(c.points.size() == 8);
  for (int e = 0; e < 8; ++e) {
    const ContourPoint& pt = c.points[e];
    CHECK(pt.theta > 0.0);
    CHECK(pt.theta < M_PI);
    CHECK(pt.z.imag() > 0.0);
    CHECK(std::abs(std::abs(pt.z - cplx(1.0, 0.0)) - 1.0) <= 1e-14);
    if (e > 0) CHECK(c.points[e - 1].theta > pt.theta);
  }

  // Reference point for the smallest positive abscissa, high-precision tabulation.
  const ContourPoint& p4 = c.points[4];
  CHECK(std::abs(p4.theta - 1.2826578641557948575) <= 1e-14);
  CHECK(std::abs(p4.z.real() - 1.2841679239019287751) <= 1e-14);
  CHECK(std::abs(p4.z.imag() - 0.95877452564472509392) <= 1e-14);
}

TEST_CASE("degenerate intervals are rejected") {
  CHECK_THROWS_AS(SearchInterval(1.0, 1.0), InputError);
  CHECK_THROWS_AS(SearchInterval(2.0, 1.0), InputError);
  CHECK_THROWS_AS(build_contour(SearchInterval(1e9, 1e9 + 1e-5), 8), InputError);
  CHECK_NOTHROW(build_contour(SearchInterval(0.0, 1e-10), 8));
}

TEST_CASE("interval geometry helpers") {
  const SearchInterval iv(-1.0, 3.0);
  CHECK(iv.center() == 1.0);
  CHECK(iv.radius() == 2.0);
  CHECK(iv.width() == 4.0);
  CHECK(iv.contains(-1.0));
  CHECK(iv.contains(3.0));
  CHECK_FALSE(iv.contains(3.0000000001));
}

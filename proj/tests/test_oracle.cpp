// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "feast/eigh.hpp"
#include "feast/oracle.hpp"
#include "test_util.hpp"

using namespace feast;
using namespace feast::oracle;
using feast::linalg::DenseMatrix;
using feast::linalg::SymmetricOperator;
using feast::linalg::Triplet;
using feast::linalg::TripletLayout;
using feast::testutil::random_hermitian;
using feast::testutil::random_hpd;
using feast::testutil::random_spd;
using feast::testutil::random_symmetric;

namespace {

template <typename T>
void check_spectrum(const SymmetricOperator<T>& a, const SymmetricOperator<T>& b,
                    const Spectrum<T>& s, double tol) {
  const int n = a.n();
  REQUIRE(static_cast<int>(s.eigenvalues.size()) == n);
  for (int i = 1; i < n; ++i) CHECK(s.eigenvalues[i - 1] <= s.eigenvalues[i]);

  const DenseMatrix<T> av = a.apply(s.eigenvectors);
  DenseMatrix<T> bv = b.apply(s.eigenvectors);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) bv(i, j) *= T{s.eigenvalues[j]};
  double err = 0.0;
  for (std::size_t k = 0; k < av.data().size(); ++k)
    err = std::max(err, std::abs(av.data()[k] - bv.data()[k]));
  CHECK(err <= tol);

  const DenseMatrix<T> gram =
      linalg::adjoint_matmul(s.eigenvectors, b.apply(s.eigenvectors));
  double orth = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      orth = std::max(orth, std::abs(gram(i, j) - T{i == j ? 1.0 : 0.0}));
  CHECK(orth <= tol);
}

}  // namespace

TEST_CASE("reference solver: diagonal pencil is exact") {
  std::vector<Triplet<double>> ta, tb;
  const double evs[4] = {-2.0, 0.5, 3.0, 9.0};
  for (int i = 0; i < 4; ++i) {
    ta.push_back({i, i, evs[i] * (i + 1.0)});
    tb.push_back({i, i, i + 1.0});
  }
  const auto a = SymmetricOperator<double>::from_triplets(4, ta, TripletLayout::Full);
  const auto b = SymmetricOperator<double>::from_triplets(4, tb, TripletLayout::Full);
  const Spectrum<double> s = reference_gevp(a, b);
  for (int i = 0; i < 4; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(evs[i]).epsilon(1e-14));
}

TEST_CASE("reference solver handles random real pencils") {
  const auto a = random_symmetric(30, 2024);
  const auto b = random_spd(30, 2025);
  check_spectrum(a, b, reference_gevp(a, b), 1e-11);
}

TEST_CASE("reference solver handles random Hermitian pencils") {
  const auto a = random_hermitian(25, 3030);
  const auto b = random_hpd(25, 3031);
  check_spectrum(a, b, reference_gevp(a, b), 1e-11);
}

TEST_CASE("reference solver rejects indefinite mass and oversized input") {
  const auto a = random_symmetric(3, 5);
  std::vector<Triplet<double>> tb{{0, 0, 1.0}, {1, 1, -1.0}, {2, 2, 1.0}};
  const auto b = SymmetricOperator<double>::from_triplets(3, tb, TripletLayout::Full);
  CHECK_THROWS_AS(reference_gevp(a, b), NumericalError);
}

TEST_CASE("reference solver agrees with the projected-pencil path") {
  // Two independently coded dense eigensolvers on the same pencil.
  const auto a = random_symmetric(18, 808);
  const auto b = random_spd(18, 809);
  const Spectrum<double> s = reference_gevp(a, b);
  const linalg::ReducedEig<double> r = linalg::reduced_gevp(a.to_dense(), b.to_dense());
  REQUIRE(s.eigenvalues.size() == r.eigenvalues.size());
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    CHECK(std::abs(s.eigenvalues[i] - r.eigenvalues[i]) <=
          1e-11 * std::max(1.0, std::abs(s.eigenvalues[i])));
}

TEST_CASE("rational filter: reference values on the unit interval") {
  const SearchInterval unit(-1.0, 1.0);

  // At the center every term reduces to -w_e/2, so only the rounding of the
  // weight sum is visible.
  for (int ne = 1; ne <= 16; ++ne)
    CHECK(std::abs(scalar_filter(0.0, unit, ne) + 1.0) <= 1e-14);

  // High-precision tabulated references, 8 points. The far-tail values are
  // small differences of O(0.1) terms, so their error floor is absolute at
  // the round-off of the accumulation, not relative.
  CHECK(std::abs(scalar_filter(0.5, unit, 8) - (-1.0000164802583470518)) <= 1e-15);
  CHECK(std::abs(scalar_filter(-0.5, unit, 8) - (-1.0000164802583470518)) <= 1e-15);
  CHECK(std::abs(scalar_filter(1.0, unit, 8) - (-0.5)) <= 1e-14);
  CHECK(std::abs(scalar_filter(2.0, unit, 8) - 1.6480258347051789577e-05) <= 5e-17);
  CHECK(std::abs(scalar_filter(3.0, unit, 8) - (-4.3219719641408335346e-07)) <= 5e-17);
  CHECK(std::abs(scalar_filter(4.0, unit, 8) - (-8.0759760015604461606e-08)) <= 5e-17);

  // 16 points: the filter is flatter inside and decays much faster outside.
  CHECK(std::abs(scalar_filter(0.5, unit, 16) - (-0.99999999976369286183)) <= 1e-15);
  CHECK(std::abs(scalar_filter(0.25, unit, 16) - (-1.0000000000000015399)) <= 1e-15);
  CHECK(std::abs(scalar_filter(2.0, unit, 16) - (-2.3630713816700372e-10)) <= 2e-16);
  CHECK(std::abs(scalar_filter(3.0, unit, 16) - (-3.3459037783382717e-13)) <= 2e-16);
}

TEST_CASE("rational filter is scale invariant") {
  const SearchInterval small(-0.5, 0.5);
  const SearchInterval unit(-1.0, 1.0);
  CHECK(std::abs(scalar_filter(0.0, small, 8) + 1.0) <= 1e-14);
  const double f_small = scalar_filter(2.0, small, 8);
  const double f_unit = scalar_filter(4.0, unit, 8);
  CHECK(std::abs(f_small - f_unit) <= 1e-13 * std::abs(f_unit));

  const SearchInterval shifted(10.0, 14.0);
  const double f_shift = scalar_filter(12.0 + 2.0 * 1.0, shifted, 8);  // (x-c)/r = 1
  const double f_ref = scalar_filter(1.0, unit, 8);
  CHECK(std::abs(f_shift - f_ref) <= 1e-13 * std::abs(f_ref));
}

TEST_CASE("numeric projector equals the filtered spectral expansion") {
  const int n = 30;
  const auto a = random_symmetric(n, 6001);
  const auto b = random_spd(n, 6002);
  const Spectrum<double> s = reference_gevp(a, b);
  // A window inside the spectrum, away from eigenvalue collisions.
  const SearchInterval iv(s.eigenvalues[5] + 1e-3, s.eigenvalues[12] - 1e-3);

  const DenseMatrix<double> v = random_block<double>(n, 3, 6003);
  const DenseMatrix<double> pv = apply_numeric_projector(a, b, iv, 8, v);

  // P V = sum_i f(lambda_i) phi_i (phi_i^T V): expanding V in the basis
  // {B phi_i}, the resolvent maps B phi_i to phi_i / (z - lambda_i).
  const DenseMatrix<double> coeff = linalg::adjoint_matmul(s.eigenvectors, v);
  DenseMatrix<double> want(n, v.cols());
  for (int i = 0; i < n; ++i) {
    const double f = scalar_filter(s.eigenvalues[i], iv, 8);
    for (int c = 0; c < v.cols(); ++c)
      for (int r = 0; r < n; ++r) want(r, c) += f * s.eigenvectors(r, i) * coeff(i, c);
  }
  double err = 0.0;
  for (std::size_t k = 0; k < pv.data().size(); ++k)
    err = std::max(err, std::abs(pv.data()[k] - want.data()[k]));
  CHECK(err <= 1e-10 * std::max(1.0, linalg::max_abs(pv)));
}

TEST_CASE("numeric projector on a centered singleton flips the sign") {
  std::vector<Triplet<double>> ta{{0, 0, 2.5}};
  const auto a = SymmetricOperator<double>::from_triplets(1, ta, TripletLayout::Full);
  const auto b = SymmetricOperator<double>::identity(1);
  DenseMatrix<double> v(1, 1);
  v(0, 0) = 3.0;
  const DenseMatrix<double> pv = apply_numeric_projector(a, b, SearchInterval(1.5, 3.5), 8, v);
  CHECK(std::abs(pv(0, 0) + 3.0) <= 1e-13);
}

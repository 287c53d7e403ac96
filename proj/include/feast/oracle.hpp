// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "feast/operator.hpp"
#include "feast/types.hpp"

namespace feast::oracle {

using linalg::DenseMatrix;
using linalg::SymmetricOperator;

template <typename T>
struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix<T> eigenvectors;      // B-orthonormal columns
};

/// Brute-force dense generalized eigensolver used as ground truth in tests.
/// Deliberately self-contained: it carries its own Cholesky, Jacobi sweep and
/// triangular solves so it never shares factorization code with the solver it
/// checks. Capped at n = 2000.
template <typename T>
Spectrum<T> reference_gevp(const SymmetricOperator<T>& a, const SymmetricOperator<T>& b);

/// Value of the rational filter the half-circle quadrature applies to an
/// eigenvalue at lambda: -sum_e (w_e / 2) Re(r e^{i theta_e} / (z_e - lambda)).
/// Equals -1 at the interval center and decays outside.
double scalar_filter(double lambda, const SearchInterval& interval, int n_e);

/// Applies the quadrature projector to the block v by direct dense solves
/// with an elimination kernel local to this module. Capped at n = 200.
DenseMatrix<double> apply_numeric_projector(const SymmetricOperator<double>& a,
                                            const SymmetricOperator<double>& b,
                                            const SearchInterval& interval, int n_e,
                                            const DenseMatrix<double>& v);

}  // namespace feast::oracle

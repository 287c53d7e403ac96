// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "feast/operator.hpp"

namespace feast::harness {

using linalg::SymmetricOperator;

/// 5-point finite-difference Laplacian on an nx-by-ny interior grid of the
/// unit square with Dirichlet boundaries, unscaled (diagonal exactly 4).
/// B is the sparse identity. n = nx * ny.
std::pair<SymmetricOperator<double>, SymmetricOperator<double>> gen_laplacian_fd(int nx, int ny);

/// Bilinear quadrilateral finite elements for the same problem on an
/// nx-by-ny cell mesh: consistent stiffness A and mass B over the
/// (nx-1)(ny-1) interior nodes.
std::pair<SymmetricOperator<double>, SymmetricOperator<double>> gen_laplacian_fem(int nx, int ny);

/// Block-diagonal direct sum of k copies of the pencil, for scaling runs.
template <typename T>
std::pair<SymmetricOperator<T>, SymmetricOperator<T>> replicate(
    const SymmetricOperator<T>& a, const SymmetricOperator<T>& b, int k);

/// Exact spectrum of gen_laplacian_fd(nx, ny), ascending.
std::vector<double> fd_laplacian_eigenvalues(int nx, int ny);

}  // namespace feast::harness

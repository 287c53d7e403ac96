// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "feast/generators.hpp"

#include <algorithm>
#include <cmath>

namespace feast::harness {

using linalg::Triplet;
using linalg::TripletLayout;

std::pair<SymmetricOperator<double>, SymmetricOperator<double>> gen_laplacian_fd(int nx,
                                                                                 int ny) {
  if (nx < 2 || ny < 2) throw InputError("gen_laplacian_fd: grid must be at least 2x2");
  if (static_cast<long long>(nx) * ny > 100000)
    throw InputError("gen_laplacian_fd: grid exceeds the size cap");
  const int n = nx * ny;
  auto id = [nx](int i, int j) { return j * nx + i; };

  std::vector<Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(n) * 3);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int me = id(i, j);
      t.push_back({me, me, 4.0});
      if (i + 1 < nx) t.push_back({me, id(i + 1, j), -1.0});
      if (j + 1 < ny) t.push_back({me, id(i, j + 1), -1.0});
    }
  }
  return {SymmetricOperator<double>::from_triplets(n, std::move(t),
                                                   TripletLayout::MirrorOffDiagonal),
          SymmetricOperator<double>::identity(n)};
}

std::pair<SymmetricOperator<double>, SymmetricOperator<double>> gen_laplacian_fem(int nx,
                                                                                  int ny) {
  if (nx < 2 || ny < 2) throw InputError("gen_laplacian_fem: need at least 2x2 cells");
  if (static_cast<long long>(nx) * ny > 100000)
    throw InputError("gen_laplacian_fem: mesh exceeds the size cap");
  const int mx = nx - 1;  // interior nodes per row
  const int my = ny - 1;
  const int n = mx * my;
  const double hx = 1.0 / nx;
  const double hy = 1.0 / ny;

  // Element matrices on a bilinear quad with local nodes
  // (0,0), (hx,0), (hx,hy), (0,hy).
  const double k1[4][4] = {{2, -2, -1, 1}, {-2, 2, 1, -1}, {-1, 1, 2, -2}, {1, -1, -2, 2}};
  const double k2[4][4] = {{2, 1, -1, -2}, {1, 2, -2, -1}, {-1, -2, 2, 1}, {-2, -1, 1, 2}};
  const double me[4][4] = {{4, 2, 1, 2}, {2, 4, 2, 1}, {1, 2, 4, 2}, {2, 1, 2, 4}};
  const double ck1 = hy / (6.0 * hx);
  const double ck2 = hx / (6.0 * hy);
  const double cm = hx * hy / 36.0;

  // Interior node (i, j) with 1 <= i <= mx, 1 <= j <= my; -1 marks boundary.
  auto node = [&](int i, int j) {
    return (i >= 1 && i <= mx && j >= 1 && j <= my) ? (j - 1) * mx + (i - 1) : -1;
  };

  std::vector<Triplet<double>> ka, kb;
  for (int cy = 0; cy < ny; ++cy) {
    for (int cx = 0; cx < nx; ++cx) {
      const int g[4] = {node(cx, cy), node(cx + 1, cy), node(cx + 1, cy + 1),
                        node(cx, cy + 1)};
      for (int r = 0; r < 4; ++r) {
        if (g[r] < 0) continue;
        for (int c = 0; c < 4; ++c) {
          if (g[c] < 0) continue;
          ka.push_back({g[r], g[c], ck1 * k1[r][c] + ck2 * k2[r][c]});
          kb.push_back({g[r], g[c], cm * me[r][c]});
        }
      }
    }
  }
  return {SymmetricOperator<double>::from_triplets(n, std::move(ka), TripletLayout::Full),
          SymmetricOperator<double>::from_triplets(n, std::move(kb), TripletLayout::Full)};
}

namespace {

template <typename T>
std::vector<Triplet<T>> shifted_copies(const SymmetricOperator<T>& op, int k) {
  std::vector<Triplet<T>> t;
  t.reserve(static_cast<std::size_t>(op.nnz()) * k);
  const int n = op.n();
  for (int copy = 0; copy < k; ++copy) {
    const int off = copy * n;
    if (op.storage() == SymmetricOperator<T>::Storage::Sparse) {
      for (int i = 0; i < n; ++i)
        for (int kk = op.row_ptr()[i]; kk < op.row_ptr()[i + 1]; ++kk)
          t.push_back({off + i, off + op.col_idx()[kk], op.values()[kk]});
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.push_back({off + i, off + j, op.entry(i, j)});
    }
  }
  return t;
}

}  // namespace

template <typename T>
std::pair<SymmetricOperator<T>, SymmetricOperator<T>> replicate(const SymmetricOperator<T>& a,
                                                                const SymmetricOperator<T>& b,
                                                                int k) {
  if (k < 1) throw InputError("replicate: factor must be positive");
  if (a.n() != b.n()) throw InputError("replicate: operator dimensions differ");
  if (static_cast<long long>(a.n()) * k > 100000)
    throw InputError("replicate: result exceeds the size cap");
  const int n = a.n() * k;
  return {SymmetricOperator<T>::from_triplets(n, shifted_copies(a, k), TripletLayout::Full),
          SymmetricOperator<T>::from_triplets(n, shifted_copies(b, k), TripletLayout::Full)};
}

template std::pair<SymmetricOperator<double>, SymmetricOperator<double>> replicate(
    const SymmetricOperator<double>&, const SymmetricOperator<double>&, int);
template std::pair<SymmetricOperator<cplx>, SymmetricOperator<cplx>> replicate(
    const SymmetricOperator<cplx>&, const SymmetricOperator<cplx>&, int);

std::vector<double> fd_laplacian_eigenvalues(int nx, int ny) {
  std::vector<double> ev;
  ev.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 1; j <= ny; ++j) {
    const double sj = std::sin(j * M_PI / (2.0 * (ny + 1)));
    for (int i = 1; i <= nx; ++i) {
      const double si = std::sin(i * M_PI / (2.0 * (nx + 1)));
      ev.push_back(4.0 * si * si + 4.0 * sj * sj);
    }
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace feast::harness

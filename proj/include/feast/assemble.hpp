// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "feast/lu.hpp"
#include "feast/operator.hpp"

namespace feast::linalg {

/// z*B - A as a dense complex matrix.
template <typename T>
DenseMatrix<cplx> assemble_shifted_dense(const SymmetricOperator<T>& a,
                                         const SymmetricOperator<T>& b, cplx z) {
  if (a.n() != b.n()) throw InputError("assemble_shifted: operator dimensions differ");
  const int n = a.n();
  DenseMatrix<cplx> m(n, n);
  using Op = SymmetricOperator<T>;
  if (a.storage() == Op::Storage::Sparse) {
    for (int i = 0; i < n; ++i)
      for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
        m(i, a.col_idx()[k]) -= a.values()[k];
  } else {
    const DenseMatrix<T>& ad = a.to_dense();
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) m(i, j) -= ad(i, j);
  }
  if (b.storage() == Op::Storage::Sparse) {
    for (int i = 0; i < n; ++i)
      for (int k = b.row_ptr()[i]; k < b.row_ptr()[i + 1]; ++k)
        m(i, b.col_idx()[k]) += z * cplx(b.values()[k]);
  } else {
    const DenseMatrix<T>& bd = b.to_dense();
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) m(i, j) += z * cplx(bd(i, j));
  }
  return m;
}

/// z*B - A in band storage; both operators must be sparse.
template <typename T>
BandMatrix assemble_shifted_banded(const SymmetricOperator<T>& a,
                                   const SymmetricOperator<T>& b, cplx z) {
  if (a.n() != b.n()) throw InputError("assemble_shifted: operator dimensions differ");
  using Op = SymmetricOperator<T>;
  if (a.storage() != Op::Storage::Sparse || b.storage() != Op::Storage::Sparse)
    throw InputError("assemble_shifted_banded: requires sparse operands");
  const int bw = std::max(a.bandwidth(), b.bandwidth());
  BandMatrix m(a.n(), bw, bw);
  for (int i = 0; i < a.n(); ++i)
    for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
      m.at(i, a.col_idx()[k]) -= a.values()[k];
  for (int i = 0; i < b.n(); ++i)
    for (int k = b.row_ptr()[i]; k < b.row_ptr()[i + 1]; ++k)
      m.at(i, b.col_idx()[k]) += z * cplx(b.values()[k]);
  return m;
}

}  // namespace feast::linalg

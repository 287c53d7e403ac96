// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "feast/operator.hpp"

namespace feast::harness {

using linalg::SymmetricOperator;

/// Reads a coordinate-format file declared `real symmetric`. One-based
/// indices; either triangle (or a mix) may be present and duplicates are
/// summed. Errors carry the offending line number.
SymmetricOperator<double> load_matrix_market_real(const std::string& path);

/// Reads `complex hermitian` files, and promotes `real symmetric` ones.
SymmetricOperator<cplx> load_matrix_market_hermitian(const std::string& path);

/// Writes the lower triangle in coordinate format with round-trip-exact
/// (17 significant digit) values.
void save_matrix_market(const std::string& path, const SymmetricOperator<double>& op);
void save_matrix_market(const std::string& path, const SymmetricOperator<cplx>& op);

}  // namespace feast::harness

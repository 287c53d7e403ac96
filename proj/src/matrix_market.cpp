// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "feast/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace feast::harness {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
  throw InputError(path + ":" + std::to_string(line) + ": " + what);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct ParsedFile {
  int n = 0;
  bool complex_field = false;  // real symmetric otherwise
  std::vector<linalg::Triplet<cplx>> entries;
};

ParsedFile parse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file: " + path);

  std::string line;
  int lineno = 0;

  if (!std::getline(in, line)) fail(path, 1, "empty file");
  ++lineno;
  std::istringstream head(line);
  std::string banner, object, format, field, symmetry;
  head >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") fail(path, lineno, "missing MatrixMarket banner");
  if (lower(object) != "matrix") fail(path, lineno, "unsupported object: " + object);
  if (lower(format) != "coordinate")
    fail(path, lineno, "unsupported format (coordinate required): " + format);
  field = lower(field);
  symmetry = lower(symmetry);

  ParsedFile pf;
  if (field == "real" && symmetry == "symmetric") {
    pf.complex_field = false;
  } else if (field == "complex" && symmetry == "hermitian") {
    pf.complex_field = true;
  } else {
    fail(path, lineno,
         "symmetry flag mismatch: need 'real symmetric' or 'complex hermitian', got '" +
             field + " " + symmetry + "'");
  }

  long long rows = -1, cols = -1, count = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '%') continue;
    std::istringstream ls(line);
    if (!(ls >> rows >> cols >> count)) fail(path, lineno, "malformed size line");
    break;
  }
  if (rows < 0) fail(path, lineno, "missing size line");
  if (rows != cols) fail(path, lineno, "matrix is not square");
  if (rows < 1) fail(path, lineno, "matrix dimension must be positive");
  if (count < 0) fail(path, lineno, "negative entry count");
  pf.n = static_cast<int>(rows);

  pf.entries.reserve(static_cast<std::size_t>(count));
  long long seen = 0;
  while (seen < count) {
    if (!std::getline(in, line)) fail(path, lineno + 1, "unexpected end of file");
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '%') continue;
    std::istringstream ls(line);
    long long i, j;
    double re, im = 0.0;
    if (!(ls >> i >> j >> re)) fail(path, lineno, "malformed entry");
    if (pf.complex_field && !(ls >> im)) fail(path, lineno, "missing imaginary part");
    if (i < 1 || i > rows || j < 1 || j > cols)
      fail(path, lineno, "index out of range");
    pf.entries.push_back(
        {static_cast<int>(i - 1), static_cast<int>(j - 1), cplx(re, im)});
    ++seen;
  }
  return pf;
}

}  // namespace

SymmetricOperator<double> load_matrix_market_real(const std::string& path) {
  ParsedFile pf = parse(path);
  if (pf.complex_field)
    throw InputError(path + ": symmetry flag mismatch: real symmetric input required");
  std::vector<linalg::Triplet<double>> t;
  t.reserve(pf.entries.size());
  for (const auto& e : pf.entries) t.push_back({e.row, e.col, e.value.real()});
  return SymmetricOperator<double>::from_triplets(pf.n, std::move(t),
                                                  linalg::TripletLayout::MirrorOffDiagonal);
}

SymmetricOperator<cplx> load_matrix_market_hermitian(const std::string& path) {
  ParsedFile pf = parse(path);
  return SymmetricOperator<cplx>::from_triplets(pf.n, std::move(pf.entries),
                                                linalg::TripletLayout::MirrorOffDiagonal);
}

namespace {

template <typename T>
void write_lower_triangle(std::FILE* f, const SymmetricOperator<T>& op) {
  // Count, then emit, stored entries with column <= row.
  long long count = 0;
  const bool sparse = op.storage() == SymmetricOperator<T>::Storage::Sparse;
  if (sparse) {
    for (int i = 0; i < op.n(); ++i)
      for (int k = op.row_ptr()[i]; k < op.row_ptr()[i + 1]; ++k)
        if (op.col_idx()[k] <= i) ++count;
  } else {
    count = static_cast<long long>(op.n()) * (op.n() + 1) / 2;
  }
  std::fprintf(f, "%d %d %lld\n", op.n(), op.n(), count);

  auto emit = [&](int i, int j, const T& v) {
    if constexpr (scalar_traits<T>::is_complex)
      std::fprintf(f, "%d %d %.17g %.17g\n", i + 1, j + 1, v.real(), v.imag());
    else
      std::fprintf(f, "%d %d %.17g\n", i + 1, j + 1, v);
  };
  if (sparse) {
    for (int i = 0; i < op.n(); ++i)
      for (int k = op.row_ptr()[i]; k < op.row_ptr()[i + 1]; ++k)
        if (op.col_idx()[k] <= i) emit(i, op.col_idx()[k], op.values()[k]);
  } else {
    for (int i = 0; i < op.n(); ++i)
      for (int j = 0; j <= i; ++j) emit(i, j, op.entry(i, j));
  }
}

}  // namespace

void save_matrix_market(const std::string& path, const SymmetricOperator<double>& op) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw InputError("cannot write matrix file: " + path);
  std::fprintf(f, "%%%%MatrixMarket matrix coordinate real symmetric\n");
  write_lower_triangle(f, op);
  std::fclose(f);
}

void save_matrix_market(const std::string& path, const SymmetricOperator<cplx>& op) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw InputError("cannot write matrix file: " + path);
  std::fprintf(f, "%%%%MatrixMarket matrix coordinate complex hermitian\n");
  write_lower_triangle(f, op);
  std::fclose(f);
}

}  // namespace feast::harness

// Copyright feastlite contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace feast {

using cplx = std::complex<double>;

/// Base class for every exception thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid caller input: bad dimensions, malformed files, out-of-range options.
struct InputError : Error {
  using Error::Error;
};

/// Numerical failure: singular factorization, loss of positive definiteness.
struct NumericalError : Error {
  using Error::Error;
};

/// Thrown by cholesky() when a leading pivot is not positive.
struct NotPositiveDefinite : NumericalError {
  using NumericalError::NumericalError;
};

/// Thrown by reduced_gevp() when the projected mass matrix is unusable even
/// after spectral truncation.
struct SubspaceBreakdown : NumericalError {
  using NumericalError::NumericalError;
};

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  using real_type = double;
  static constexpr bool is_complex = false;
  static double conj(double x) { return x; }
  static double real(double x) { return x; }
};

template <>
struct scalar_traits<cplx> {
  using real_type = double;
  static constexpr bool is_complex = true;
  static cplx conj(const cplx& x) { return std::conj(x); }
  static double real(const cplx& x) { return x.real(); }
};

/// Closed interval [lambda_min, lambda_max] on the real axis.
class SearchInterval {
 public:
  SearchInterval(double lambda_min, double lambda_max)
      : lo_(lambda_min), hi_(lambda_max) {
    if (!(lo_ < hi_))
      throw InputError("SearchInterval: lambda_min must be strictly below lambda_max");
  }

  double lambda_min() const { return lo_; }
  double lambda_max() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double center() const { return 0.5 * (lo_ + hi_); }
  double radius() const { return 0.5 * (hi_ - lo_); }

  /// Both endpoints count as inside.
  bool contains(double x) const { return lo_ <= x && x <= hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace feast

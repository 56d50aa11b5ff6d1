#pragma once

#include <complex>
#include <vector>

namespace kgt {

/// J_0(eta) .. J_n(eta) for real eta >= 0.
///
/// Values come from Miller's backward recurrence seeded well above both the
/// requested order and the turning point n ~ eta, normalised with the sum rule
/// J_0 + 2 sum_{m>=1} J_{2m} = 1. Full relative accuracy is kept down into the
/// exponentially small tail.
struct BesselSequence {
  double eta = 0.0;
  std::vector<double> values;  ///< values[n] = J_n(eta)

  int n_max() const { return static_cast<int>(values.size()) - 1; }
  double operator[](int n) const { return values[static_cast<std::size_t>(n)]; }
};

/// Rejects negative or non-finite eta and negative n_max.
BesselSequence bessel_j_sequence(double eta, int n_max);

/// J_n'(eta) from a stored sequence: J_0' = -J_1, otherwise (J_{n-1} - J_{n+1})/2.
/// Requires n + 1 <= seq.n_max(); throws std::out_of_range otherwise.
double bessel_j_derivative(const BesselSequence& seq, int n);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
///
/// Rational approximation on the upper half-plane, Laplace continued fraction
/// far from the origin, and the reflection w(-z) = 2 exp(-z^2) - w(z) for
/// Im z < 0. Rejects non-finite input.
std::complex<double> faddeeva_w(std::complex<double> z);

}  // namespace kgt

#include "kgt/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kgt {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

BesselSequence bessel_j_sequence(double eta, int n_max) {
  if (!std::isfinite(eta) || eta < 0.0) {
    throw std::invalid_argument("bessel_j_sequence: eta must be finite and >= 0");
  }
  if (n_max < 0) {
    throw std::invalid_argument("bessel_j_sequence: n_max must be >= 0");
  }

  BesselSequence seq;
  seq.eta = eta;
  seq.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (eta == 0.0) {
    seq.values[0] = 1.0;  // J_n(0) = delta_{n0}
    return seq;
  }

  // The downward recurrence is stable only when seeded in the monotone-decay
  // region, so the start order sits above both n_max and the turning point.
  const int n_eff = std::max(n_max, static_cast<int>(std::ceil(eta)));
  const int n_start =
      n_eff + std::max(20, static_cast<int>(std::ceil(10.0 * std::sqrt(static_cast<double>(n_eff)))));

  std::vector<double> trial(static_cast<std::size_t>(n_start) + 2, 0.0);
  trial[static_cast<std::size_t>(n_start) + 1] = 0.0;
  trial[static_cast<std::size_t>(n_start)] = 1e-30;
  for (int n = n_start; n >= 1; --n) {
    const double next = (2.0 * n / eta) * trial[n] - trial[n + 1];
    trial[n - 1] = next;
    if (std::abs(next) > 1e250) {
      for (int m = n - 1; m <= n_start + 1; ++m) trial[m] *= 1e-250;
    }
  }

  double norm = trial[0];
  for (int m = 2; m <= n_start; m += 2) norm += 2.0 * trial[m];
  for (int n = 0; n <= n_max; ++n) seq.values[static_cast<std::size_t>(n)] = trial[n] / norm;
  return seq;
}

double bessel_j_derivative(const BesselSequence& seq, int n) {
  if (n < 0 || n + 1 > seq.n_max()) {
    throw std::out_of_range("bessel_j_derivative: need n >= 0 with n + 1 <= n_max");
  }
  if (n == 0) return -seq.values[1];
  return 0.5 * (seq.values[static_cast<std::size_t>(n) - 1] - seq.values[static_cast<std::size_t>(n) + 1]);
}

namespace {

// Rational approximation of w on the upper half-plane (Weideman-style):
// Fourier coefficients of (L^2 + t^2) exp(-t^2) under t = L tan(theta/2).
constexpr int kRationalTerms = 64;

const std::array<double, kRationalTerms>& rational_coefficients() {
  static const std::array<double, kRationalTerms> coeffs = [] {
    std::array<double, kRationalTerms> out{};
    const int m = 2 * kRationalTerms;
    const double L = std::sqrt(kRationalTerms / std::sqrt(2.0));
    std::vector<double> f(static_cast<std::size_t>(m), 0.0);
    f[0] = L * L;
    for (int k = 1; k < m; ++k) {
      const double t = L * std::tan(0.5 * k * kPi / m);
      f[static_cast<std::size_t>(k)] = (L * L + t * t) * std::exp(-t * t);
    }
    for (int j = 1; j <= kRationalTerms; ++j) {
      double s = f[0];
      for (int k = 1; k < m; ++k) {
        s += 2.0 * f[static_cast<std::size_t>(k)] * std::cos(j * k * kPi / m);
      }
      out[static_cast<std::size_t>(j) - 1] = s / (2.0 * m);
    }
    return out;
  }();
  return coeffs;
}

std::complex<double> w_rational(std::complex<double> z) {
  const double L = std::sqrt(kRationalTerms / std::sqrt(2.0));
  const std::complex<double> iz(-z.imag(), z.real());
  const std::complex<double> denom = L - iz;
  const std::complex<double> big_z = (L + iz) / denom;
  const auto& a = rational_coefficients();
  std::complex<double> p = 0.0;
  for (int m = kRationalTerms - 1; m >= 0; --m) {
    p = p * big_z + a[static_cast<std::size_t>(m)];
  }
  return 2.0 * p / (denom * denom) + (1.0 / std::sqrt(kPi)) / denom;
}

// Laplace continued fraction; excellent for |z| >~ 12 with Im z >= 0.
std::complex<double> w_continued_fraction(std::complex<double> z) {
  std::complex<double> f = z;
  for (int k = 40; k >= 1; --k) {
    f = z - (0.5 * k) / f;
  }
  return std::complex<double>(0.0, 1.0) / (std::sqrt(kPi) * f);
}

// Im z >= 0, Re z >= 0.
std::complex<double> w_first_quadrant(std::complex<double> z) {
  return std::norm(z) > 144.0 ? w_continued_fraction(z) : w_rational(z);
}

// Im z >= 0.
std::complex<double> w_upper(std::complex<double> z) {
  if (z.real() < 0.0) {
    return std::conj(w_first_quadrant(-std::conj(z)));  // w(-conj z) = conj(w(z))
  }
  return w_first_quadrant(z);
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument("faddeeva_w: non-finite argument");
  }
  if (z.imag() < 0.0) {
    return 2.0 * std::exp(-z * z) - w_upper(-z);
  }
  return w_upper(z);
}

}  // namespace kgt

#include "kgt/units.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kgt {

void PhysicalSetup::validate() const {
  if (!std::isfinite(hbar) || !std::isfinite(mass) || !std::isfinite(c) || !std::isfinite(E) ||
      !std::isfinite(V)) {
    throw std::invalid_argument("PhysicalSetup: all fields must be finite");
  }
  if (hbar <= 0.0 || mass <= 0.0 || c <= 0.0) {
    throw std::invalid_argument("PhysicalSetup: hbar, mass and c must be positive");
  }
  if (V < 0.0) {
    throw std::invalid_argument("PhysicalSetup: V must be >= 0");
  }
}

RegimeClassification classify_regime(const PhysicalSetup& setup) {
  setup.validate();
  const double mu = setup.mu();
  const double eps = setup.epsilon();

  // Band-edge detection: |eps| = mu up to a few ulps of the energy scale.
  const double scale = std::max({mu, std::abs(setup.E), setup.V});
  const double edge_tol = 8.0 * std::numeric_limits<double>::epsilon() * scale;

  if (std::abs(eps - mu) <= edge_tol) {
    return {Regime::BoundaryUpper, {0.0, 0.0}};
  }
  if (std::abs(eps + mu) <= edge_tol) {
    return {Regime::BoundaryLower, {0.0, 0.0}};
  }
  if (eps > mu) {
    return {Regime::Propagation, {std::sqrt(eps * eps - mu * mu), 0.0}};
  }
  if (eps < -mu) {
    return {Regime::KleinTunneling, {-std::sqrt(eps * eps - mu * mu), 0.0}};
  }
  // In-gap case: decaying branch, k on the positive imaginary axis.
  return {Regime::Evanescent, {0.0, std::sqrt(mu * mu - eps * eps)}};
}

std::pair<std::complex<double>, std::complex<double>> z_plus_minus(const PhysicalSetup& setup,
                                                                   std::complex<double> k) {
  setup.validate();
  const double mu = setup.mu();
  const double eps = setup.epsilon();
  return {(eps + k) / mu, (eps - k) / mu};
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Propagation: return "propagation";
    case Regime::Evanescent: return "evanescent";
    case Regime::KleinTunneling: return "klein_tunneling";
    case Regime::BoundaryUpper: return "boundary_upper";
    case Regime::BoundaryLower: return "boundary_lower";
  }
  return "unknown";
}

}  // namespace kgt

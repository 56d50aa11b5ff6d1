#pragma once

#include <complex>
#include <utility>

namespace kgt {

/// Physical constants and the source/step configuration.
///
/// Energies are expressed as reciprocal lengths: E = E_r/(hbar c) for the
/// source and V = U_r/(hbar c) for the step. Natural units hbar = m = c = 1
/// are the defaults, but every constant is a field so dimensional runs work.
struct PhysicalSetup {
  double hbar = 1.0;
  double mass = 1.0;
  double c = 1.0;
  double E = 0.0;  ///< source energy (reciprocal length)
  double V = 0.0;  ///< step height (reciprocal length), >= 0

  double mu() const { return mass * c / hbar; }
  double epsilon() const { return E - V; }  ///< energy of the equivalent free-type source
  double omega_zbw() const { return 2.0 * mu() * c; }
  double step_potential() const { return hbar * c * V; }  ///< U_r for x >= 0

  /// Throws std::invalid_argument when a field is non-finite, a constant is
  /// not positive, or V < 0.
  void validate() const;
};

enum class Regime {
  Propagation,    ///< E > V + mu, k real positive
  Evanescent,     ///< V - mu < E < V + mu, k positive imaginary
  KleinTunneling, ///< E < V - mu, k real negative
  BoundaryUpper,  ///< E = V + mu, k = 0
  BoundaryLower,  ///< E = V - mu, k = 0
};

struct RegimeClassification {
  Regime regime;
  std::complex<double> k;  ///< branch-correct momentum; satisfies eps^2 = k^2 + mu^2
};

/// Momentum and regime from the dispersion relation (E - V)^2 = k^2 + mu^2.
/// Total on valid setups; the band edges |eps| = mu map to the Boundary
/// variants with k = 0.
RegimeClassification classify_regime(const PhysicalSetup& setup);

/// z+- = (eps +- k)/mu. On the dispersion shell z+ z- = 1.
std::pair<std::complex<double>, std::complex<double>> z_plus_minus(const PhysicalSetup& setup,
                                                                   std::complex<double> k);

const char* to_string(Regime r);

}  // namespace kgt

#pragma once

#include <complex>

#include "kgt/series_kernel.hpp"
#include "kgt/source_solution.hpp"

namespace kgt {

/// Free cut-off-wave (shutter) configuration on the propagation branch:
/// E >= mu with E^2 = k^2 + mu^2 and z = (E + k)/mu >= 1.
struct ShutterSetup {
  double hbar = 1.0;
  double mass = 1.0;
  double c = 1.0;
  double E = 1.0;  ///< free energy (reciprocal length), >= mu

  double mu() const { return mass * c / hbar; }
  double k() const;
  double z() const { return (E + k()) / mu(); }
  double omega_zbw() const { return 2.0 * mu() * c; }

  void validate() const;
};

/// Free scalar shutter wave released at t = 0:
/// e^{i(kx - Ect)} + J_0(eta)/2 - sum_{n>=0} (xi/(iz))^n J_n(eta) for t > x/c.
WaveSample psi_kg_shutter(double x, double t, const ShutterSetup& setup,
                          const SeriesPolicy& policy = {}, RepChoice choice = RepChoice::Auto);

/// Spinor shutter sample; rho = |psi1|^2 + |psi2|^2.
struct DiracSample {
  std::complex<double> psi1{};
  std::complex<double> psi2{};
  double rho = 0.0;
};

/// Free spin-1/2 shutter wave: sqrt(mu/(2z)) ([-1,1]^T J_0(eta) +
/// [z+1, z-1]^T Phi(x,t)) for t > x/c, with
/// Phi = e^{i(kx - Ect)} - sum_{n>=1} (xi/(iz))^n J_n(eta).
DiracSample dirac_shutter(double x, double t, const ShutterSetup& setup,
                          const SeriesPolicy& policy = {}, RepChoice choice = RepChoice::Auto);

/// Long-time scalar shutter density split; rho_total -> (hbar/(m c)) E.
AsymptoticDensity rho_kg_longtime(double x, double t, const ShutterSetup& setup);

/// Long-time spinor shutter density split; rho_total -> 2E.
AsymptoticDensity rho_dirac_longtime(double x, double t, const ShutterSetup& setup);

}  // namespace kgt

#pragma once

#include <complex>

#include "kgt/series_kernel.hpp"
#include "kgt/units.hpp"

namespace kgt {

/// The wave and its density at one spacetime point, with the representation
/// that produced each +/- component. rho always equals the density() of the
/// stored psi and dpsi_dt.
struct WaveSample {
  std::complex<double> psi{};
  std::complex<double> dpsi_dt{};
  double rho = 0.0;
  Representation representation = Representation::OutsideCone;        ///< + component
  Representation representation_minus = Representation::OutsideCone;  ///< - component
};

/// Exact point-source wave for the step problem at (x, t), x >= 0.
///
/// Zero outside the light cone. Inside, each +/- component is summed in the
/// representation whose geometric ratio has modulus <= 1 (or as forced by
/// `choice`); within the front-guard window the value switches to the front
/// expansion. Throws TruncationFailure when a series fails to converge.
WaveSample psi_source(double x, double t, const PhysicalSetup& setup,
                      const SeriesPolicy& policy = {}, RepChoice choice = RepChoice::Auto);

/// Term-wise analytic time derivative of psi_source. Requires a point strictly
/// inside the light cone and outside the front-guard window (FrontGuardError).
std::complex<double> dpsi_dt_source(double x, double t, const PhysicalSetup& setup,
                                    const SeriesPolicy& policy = {});

/// rho = -(hbar/(m c^2)) Im[conj(psi) dpsi_dt] - (U/(m c^2)) |psi|^2.
double density(std::complex<double> psi, std::complex<double> dpsi_dt, double U, double hbar,
               double mass, double c);
double density(std::complex<double> psi, std::complex<double> dpsi_dt, double U,
               const PhysicalSetup& setup);

/// Leading expansion next to the light cone, 0 < ct - x << 1/mu:
/// [-1 + e^{-i mu z+ (ct-x)/2} + e^{-i mu z- (ct-x)/2}] e^{-i c V t}.
std::complex<double> psi_front_asymptotic(double x, double t, const PhysicalSetup& setup);

/// Principal long-time form, t >> x/c: the stationary plane wave plus a
/// t^{-3/2} tail oscillating at the mass frequency. The carrier phase is the
/// light-cone phase eta(x, t), which reduces to mu c t far from the front.
std::complex<double> psi_longtime_source(double x, double t, const PhysicalSetup& setup);

/// Amplitude (2/(pi mu c))^{1/2} (2x/c) of the long-time tail.
double longtime_alpha(double x, const PhysicalSetup& setup);

/// Two-component long-time density split: the source-frequency quadrature, the
/// mass-frequency quadrature, and their sum. rho_total -> (hbar/(m c)) eps as
/// t -> infinity.
struct AsymptoticDensity {
  double rho_energy = 0.0;
  double rho_mass = 0.0;
  double rho_total = 0.0;
};

/// Long-time density of the point source (real-momentum regimes).
AsymptoticDensity rho_longtime_source(double x, double t, const PhysicalSetup& setup);

}  // namespace kgt

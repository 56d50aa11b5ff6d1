#pragma once

#include <complex>

#include "kgt/units.hpp"

namespace kgt {

/// Arguments of the transient kernel of the free Schrodinger equation.
/// beta = 2m/hbar; q is the (signed) momentum.
struct MoshinskyArgs {
  double x = 0.0;
  double q = 0.0;
  double t = 1.0;
  double beta = 2.0;

  void validate() const;  // t > 0, beta > 0, all finite
};

/// M(x, q, t) = (1/2) e^{i beta x^2/(4t)} w(u),
/// u = e^{i pi/4} sqrt(beta/(4t)) (x - 2 q t / beta),
/// the canonical cut-off-wave solution of the free Schrodinger equation.
std::complex<double> moshinsky_m(const MoshinskyArgs& args);

/// Momentum of the matched non-relativistic run: kinetic energy eps - mu above
/// the step, i.e. k_s = sqrt(2 mu (eps - mu)). Requires eps > mu.
double schrodinger_momentum(const PhysicalSetup& setup);

/// Schrodinger-limit point-source wave for the step problem:
/// e^{-i mu c t} [M(x, k_s, t) + M(x, -k_s, t)] e^{-i c V t}.
/// The rest-mass phase carries the full mu c t; at x = 0 the boundary value
/// then matches e^{-iEct} through second order in k_s/mu.
std::complex<double> psi_schrodinger_step(double x, double t, const PhysicalSetup& setup);

}  // namespace kgt

#include "kgt/shutter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kgt/errors.hpp"

namespace kgt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI(0.0, 1.0);

void check_point(double x, double t) {
  if (!std::isfinite(x) || !std::isfinite(t) || x < 0.0) {
    throw std::invalid_argument("shutter solution: require finite t and x >= 0");
  }
}

}  // namespace

double ShutterSetup::k() const { return std::sqrt(std::max(E * E - mu() * mu(), 0.0)); }

void ShutterSetup::validate() const {
  if (!std::isfinite(hbar) || !std::isfinite(mass) || !std::isfinite(c) || !std::isfinite(E)) {
    throw std::invalid_argument("ShutterSetup: all fields must be finite");
  }
  if (hbar <= 0.0 || mass <= 0.0 || c <= 0.0) {
    throw std::invalid_argument("ShutterSetup: hbar, mass and c must be positive");
  }
  if (E < mu()) {
    throw std::invalid_argument("ShutterSetup: require E >= mu (propagation branch)");
  }
}

WaveSample psi_kg_shutter(double x, double t, const ShutterSetup& setup, const SeriesPolicy& policy,
                          RepChoice choice) {
  setup.validate();
  policy.validate();
  check_point(x, t);

  WaveSample sample;
  const double mu = setup.mu();
  const double c = setup.c;
  const LightconeCoords lc = lightcone_coords(x, t, mu, c);
  if (!lc.inside) return sample;

  const double k = setup.k();
  const double z = setup.z();
  const double omega = setup.E * c;
  const double tau = c * t - x;

  if (mu * tau < policy.front_guard) {
    sample.psi = std::exp(-kI * (0.5 * mu * tau) * z) - 0.5;
    if (mu * tau > 1e-12) {
      detail::SeriesWorkspace ws(lc, mu, c, policy);
      sample.dpsi_dt = detail::eval_component(ws, z, k, omega, RepChoice::ForceB, true).dvalue_dt;
    } else {
      sample.dpsi_dt = -kI * (0.5 * mu * z * c) * std::exp(-kI * (0.5 * mu * tau) * z) -
                       0.25 * mu * mu * c * c * t;
    }
    sample.representation = Representation::FrontAsymptotic;
    sample.representation_minus = Representation::FrontAsymptotic;
  } else {
    detail::SeriesWorkspace ws(lc, mu, c, policy);
    const auto comp = detail::eval_component(ws, z, k, omega, choice, true);
    sample.psi = comp.value;
    sample.dpsi_dt = comp.dvalue_dt;
    sample.representation = comp.rep;
    sample.representation_minus = comp.rep;
  }
  sample.rho = density(sample.psi, sample.dpsi_dt, 0.0, setup.hbar, setup.mass, setup.c);
  return sample;
}

DiracSample dirac_shutter(double x, double t, const ShutterSetup& setup, const SeriesPolicy& policy,
                          RepChoice choice) {
  setup.validate();
  policy.validate();
  check_point(x, t);

  DiracSample sample;
  const double mu = setup.mu();
  const double c = setup.c;
  const LightconeCoords lc = lightcone_coords(x, t, mu, c);
  if (!lc.inside) return sample;

  const double k = setup.k();
  const double z = setup.z();
  const double omega = setup.E * c;

  // The spinor needs no time derivative, and the B form stays stable at the
  // front, so the series path covers the whole cone interior.
  detail::SeriesWorkspace ws(lc, mu, c, policy);
  const auto comp = detail::eval_component(ws, z, k, omega, choice, false);
  const double j0 = ws.j(0);
  const std::complex<double> phi = comp.value + 0.5 * j0;
  const double pref = std::sqrt(mu / (2.0 * z));
  sample.psi1 = pref * (-j0 + (z + 1.0) * phi);
  sample.psi2 = pref * (j0 + (z - 1.0) * phi);
  sample.rho = std::norm(sample.psi1) + std::norm(sample.psi2);
  return sample;
}

AsymptoticDensity rho_kg_longtime(double x, double t, const ShutterSetup& setup) {
  setup.validate();
  check_point(x, t);
  const double mu = setup.mu();
  const double c = setup.c;
  const LightconeCoords lc = lightcone_coords(x, t, mu, c);
  if (!lc.inside) {
    throw std::domain_error("rho_kg_longtime: point must lie inside the light cone");
  }
  const double E = setup.E;
  const double k = setup.k();
  const double z = setup.z();
  const double chi = k * x - E * c * t;  // omega = E c
  const double envelope = std::sqrt(2.0 / (kPi * lc.eta));
  const double gamma_r = c * t / (lc.eta / mu);
  const double g = lc.xi * lc.xi / (z * z);
  const double unit = setup.hbar / (setup.mass * c);

  // First-order-in-envelope density of
  //   e^{i chi} - J_0/2 - (xi/(iz)) J_1 - (xi/(iz))^2 J_2;
  // far from the front this reduces to the (2 pi mu c t)^{-1/2} quadrature
  // pair with constants E/2 + E/2.
  AsymptoticDensity rho;
  rho.rho_energy = unit * (0.5 * E - envelope * (0.5 * E + lc.xi * mu * gamma_r / z + g * E) *
                                         std::cos(lc.eta - 0.25 * kPi) * std::cos(chi));
  rho.rho_mass = unit * (0.5 * E + envelope * (0.5 * mu * gamma_r + lc.xi * E / z + g * mu * gamma_r) *
                                       std::sin(lc.eta - 0.25 * kPi) * std::sin(chi));
  rho.rho_total = rho.rho_energy + rho.rho_mass;
  return rho;
}

AsymptoticDensity rho_dirac_longtime(double x, double t, const ShutterSetup& setup) {
  setup.validate();
  check_point(x, t);
  const double mu = setup.mu();
  const double c = setup.c;
  const LightconeCoords lc = lightcone_coords(x, t, mu, c);
  if (!lc.inside) {
    throw std::domain_error("rho_dirac_longtime: point must lie inside the light cone");
  }
  const double E = setup.E;
  const double k = setup.k();
  const double z = setup.z();
  const double chi = k * x - E * c * t;
  const double envelope = std::sqrt(2.0 / (kPi * lc.eta));
  const double g = lc.xi * lc.xi / (z * z);

  // Density of the spinor with Phi kept through its J_2 term; the J_2 beat
  // against the plane wave carries the same envelope power as the J_1 one.
  AsymptoticDensity rho;
  rho.rho_energy = E + (4.0 * lc.xi * E / z) * envelope * std::cos(lc.eta - 0.75 * kPi) * std::sin(chi);
  rho.rho_mass = E - (2.0 * mu / z + 4.0 * E * g) * envelope * std::cos(lc.eta - 0.25 * kPi) * std::cos(chi);
  rho.rho_total = rho.rho_energy + rho.rho_mass;
  return rho;
}

}  // namespace kgt

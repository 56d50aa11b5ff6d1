#include "kgt/source_solution.hpp"

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
    throw std::invalid_argument("source solution: require finite t and x >= 0");
  }
}

// Inner part of the front expansion (gauge phase excluded).
std::complex<double> front_inner(double tau, std::complex<double> zp, std::complex<double> zm,
                                 double mu) {
  return -1.0 + std::exp(-kI * (0.5 * mu * tau) * zp) + std::exp(-kI * (0.5 * mu * tau) * zm);
}

}  // namespace

double density(std::complex<double> psi, std::complex<double> dpsi_dt, double U, double hbar,
               double mass, double c) {
  const double mc2 = mass * c * c;
  return -(hbar / mc2) * std::imag(std::conj(psi) * dpsi_dt) - (U / mc2) * std::norm(psi);
}

double density(std::complex<double> psi, std::complex<double> dpsi_dt, double U,
               const PhysicalSetup& setup) {
  return density(psi, dpsi_dt, U, setup.hbar, setup.mass, setup.c);
}

WaveSample psi_source(double x, double t, const PhysicalSetup& setup, const SeriesPolicy& policy,
                      RepChoice choice) {
  setup.validate();
  policy.validate();
  check_point(x, t);

  WaveSample sample;
  const double mu = setup.mu();
  const double c = setup.c;
  const LightconeCoords lc = lightcone_coords(x, t, mu, c);
  if (!lc.inside) return sample;  // causal zero, including t <= 0

  const double eps = setup.epsilon();
  const double omega_free = eps * c;
  const RegimeClassification rc = classify_regime(setup);
  const auto [zp, zm] = z_plus_minus(setup, rc.k);
  const std::complex<double> phase = std::exp(-kI * (c * setup.V * t));
  const double tau = c * t - x;

  std::complex<double> inner, dinner;
  if (mu * tau < policy.front_guard) {
    inner = front_inner(tau, zp, zm, mu);
    if (mu * tau > 1e-12) {
      // The B-form term-wise derivative stays well conditioned at the front.
      detail::SeriesWorkspace ws(lc, mu, c, policy);
      dinner = detail::eval_component(ws, zp, rc.k, omega_free, RepChoice::ForceB, true).dvalue_dt +
               detail::eval_component(ws, zm, -rc.k, omega_free, RepChoice::ForceB, true).dvalue_dt;
    } else {
      // Light-front limit of the derivative: -i eps c from the exponents plus
      // the mass-shell piece d/dt J_0(eta) -> -mu^2 c^2 t / 2.
      dinner = -kI * omega_free - 0.5 * mu * mu * c * c * t;
    }
    sample.representation = Representation::FrontAsymptotic;
    sample.representation_minus = Representation::FrontAsymptotic;
  } else {
    detail::SeriesWorkspace ws(lc, mu, c, policy);
    const auto plus = detail::eval_component(ws, zp, rc.k, omega_free, choice, true);
    const auto minus = detail::eval_component(ws, zm, -rc.k, omega_free, choice, true);
    inner = plus.value + minus.value;
    dinner = plus.dvalue_dt + minus.dvalue_dt;
    sample.representation = plus.rep;
    sample.representation_minus = minus.rep;
  }

  sample.psi = inner * phase;
  sample.dpsi_dt = (dinner - kI * (c * setup.V) * inner) * phase;
  sample.rho = density(sample.psi, sample.dpsi_dt, setup.step_potential(), setup);
  return sample;
}

std::complex<double> dpsi_dt_source(double x, double t, const PhysicalSetup& setup,
                                    const SeriesPolicy& policy) {
  setup.validate();
  policy.validate();
  check_point(x, t);

  const double mu = setup.mu();
  const double c = setup.c;
  const LightconeCoords lc = lightcone_coords(x, t, mu, c);
  if (!lc.inside) {
    throw std::domain_error("dpsi_dt_source: point must lie strictly inside the light cone");
  }
  const double tau = c * t - x;
  if (mu * tau < policy.front_guard) {
    throw FrontGuardError("dpsi_dt_source: point inside the front-guard window");
  }

  const double omega_free = setup.epsilon() * c;
  const RegimeClassification rc = classify_regime(setup);
  const auto [zp, zm] = z_plus_minus(setup, rc.k);
  detail::SeriesWorkspace ws(lc, mu, c, policy);
  const auto plus = detail::eval_component(ws, zp, rc.k, omega_free, RepChoice::Auto, true);
  const auto minus = detail::eval_component(ws, zm, -rc.k, omega_free, RepChoice::Auto, true);
  const std::complex<double> inner = plus.value + minus.value;
  const std::complex<double> dinner = plus.dvalue_dt + minus.dvalue_dt;
  const std::complex<double> phase = std::exp(-kI * (c * setup.V * t));
  return (dinner - kI * (c * setup.V) * inner) * phase;
}

std::complex<double> psi_front_asymptotic(double x, double t, const PhysicalSetup& setup) {
  setup.validate();
  check_point(x, t);
  const RegimeClassification rc = classify_regime(setup);
  const auto [zp, zm] = z_plus_minus(setup, rc.k);
  const double tau = setup.c * t - x;
  return front_inner(tau, zp, zm, setup.mu()) * std::exp(-kI * (setup.c * setup.V * t));
}

double longtime_alpha(double x, const PhysicalSetup& setup) {
  return std::sqrt(2.0 / (kPi * setup.mu() * setup.c)) * (2.0 * x / setup.c);
}

std::complex<double> psi_longtime_source(double x, double t, const PhysicalSetup& setup) {
  setup.validate();
  check_point(x, t);
  const double mu = setup.mu();
  const double c = setup.c;
  const LightconeCoords lc = lightcone_coords(x, t, mu, c);
  if (!lc.inside) {
    throw std::domain_error("psi_longtime_source: point must lie inside the light cone");
  }
  const RegimeClassification rc = classify_regime(setup);
  const auto [zp, zm] = z_plus_minus(setup, rc.k);

  const std::complex<double> psi_stationary = std::exp(kI * (rc.k * x - setup.E * c * t));
  // Tail prefactors: the mass-carrier term (xi^2 - 1)/(xi z+) whose far limit
  // reproduces alpha/(z+ t^{3/2}), and its second-order companion
  // (xi^4 - 1)/(xi^2 z+^2), same power of t and one power of z+ down.
  const std::complex<double> q = (lc.xi * lc.xi - 1.0) / (lc.xi * zp);
  const std::complex<double> g = (std::pow(lc.xi, 4) - 1.0) / (lc.xi * lc.xi * zp * zp);
  const double envelope = std::sqrt(2.0 / (kPi * lc.eta));
  const std::complex<double> phase = std::exp(-kI * (c * setup.V * t));
  const std::complex<double> tail =
      kI * q * std::cos(lc.eta - 0.75 * kPi) + g * std::cos(lc.eta - 1.25 * kPi);
  return psi_stationary + tail * envelope * phase;
}

AsymptoticDensity rho_longtime_source(double x, double t, const PhysicalSetup& setup) {
  setup.validate();
  check_point(x, t);
  const double mu = setup.mu();
  const double c = setup.c;
  const LightconeCoords lc = lightcone_coords(x, t, mu, c);
  if (!lc.inside) {
    throw std::domain_error("rho_longtime_source: point must lie inside the light cone");
  }
  const RegimeClassification rc = classify_regime(setup);
  if (rc.regime == Regime::Evanescent) {
    throw std::domain_error("rho_longtime_source: defined for real-momentum regimes");
  }
  const double k = rc.k.real();
  const double eps = setup.epsilon();
  const auto [zp_c, zm_c] = z_plus_minus(setup, rc.k);
  const double zp = zp_c.real();

  const double chi = k * x - eps * c * t;  // source-frequency phase, omega = eps c
  const double envelope = std::sqrt(2.0 / (kPi * lc.eta));
  const double q = (lc.xi * lc.xi - 1.0) / (lc.xi * zp);
  const double g = (std::pow(lc.xi, 4) - 1.0) / (lc.xi * lc.xi * zp * zp);
  const double gamma_r = c * t / (lc.eta / mu);  // ct / sqrt(c^2 t^2 - x^2)
  const double unit = setup.hbar / (setup.mass * c);

  AsymptoticDensity rho;
  rho.rho_energy = unit * (0.5 * eps + (q * eps + g * mu * gamma_r) * envelope *
                                           std::cos(lc.eta - 0.75 * kPi) * std::sin(chi));
  rho.rho_mass = unit * (0.5 * eps - (q * mu * gamma_r + g * eps) * envelope *
                                         std::cos(lc.eta - 0.25 * kPi) * std::cos(chi));
  rho.rho_total = rho.rho_energy + rho.rho_mass;
  return rho;
}

}  // namespace kgt

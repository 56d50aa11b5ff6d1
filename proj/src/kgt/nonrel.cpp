#include "kgt/nonrel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kgt/special_functions.hpp"

namespace kgt {

namespace {
constexpr std::complex<double> kI(0.0, 1.0);
}

void MoshinskyArgs::validate() const {
  if (!std::isfinite(x) || !std::isfinite(q) || !std::isfinite(t) || !std::isfinite(beta)) {
    throw std::invalid_argument("MoshinskyArgs: all fields must be finite");
  }
  if (!(t > 0.0)) throw std::invalid_argument("MoshinskyArgs: t must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("MoshinskyArgs: beta must be > 0");
}

std::complex<double> moshinsky_m(const MoshinskyArgs& args) {
  args.validate();
  const double y = std::sqrt(args.beta / (4.0 * args.t)) * (args.x - 2.0 * args.q * args.t / args.beta);
  const std::complex<double> u = std::polar(1.0, std::numbers::pi / 4.0) * y;
  const std::complex<double> fresnel = std::exp(kI * (args.beta * args.x * args.x / (4.0 * args.t)));
  return 0.5 * fresnel * faddeeva_w(u);
}

double schrodinger_momentum(const PhysicalSetup& setup) {
  setup.validate();
  const double mu = setup.mu();
  const double kinetic = setup.epsilon() - mu;
  if (!(kinetic > 0.0)) {
    throw std::domain_error("schrodinger_momentum: require eps > mu (propagation-type source)");
  }
  return std::sqrt(2.0 * mu * kinetic);
}

std::complex<double> psi_schrodinger_step(double x, double t, const PhysicalSetup& setup) {
  setup.validate();
  if (!std::isfinite(x) || !std::isfinite(t) || x < 0.0) {
    throw std::invalid_argument("psi_schrodinger_step: require finite t and x >= 0");
  }
  if (t <= 0.0) return {0.0, 0.0};

  const double mu = setup.mu();
  const double c = setup.c;
  const double ks = schrodinger_momentum(setup);
  const double beta = 2.0 * setup.mass / setup.hbar;
  MoshinskyArgs fwd{x, ks, t, beta};
  MoshinskyArgs bwd{x, -ks, t, beta};
  const std::complex<double> rest_phase = std::exp(-kI * (mu * c * t));  // (mc^2/hbar) t
  const std::complex<double> step_phase = std::exp(-kI * (setup.V * c * t));  // U_r t / hbar
  return rest_phase * (moshinsky_m(fwd) + moshinsky_m(bwd)) * step_phase;
}

}  // namespace kgt

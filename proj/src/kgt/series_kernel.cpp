#include "kgt/series_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kgt/errors.hpp"

namespace kgt {

void SeriesPolicy::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw std::invalid_argument("SeriesPolicy: rel_tol must be positive and finite");
  }
  if (max_terms < 1) {
    throw std::invalid_argument("SeriesPolicy: max_terms must be >= 1");
  }
  if (consecutive_small < 1) {
    throw std::invalid_argument("SeriesPolicy: consecutive_small must be >= 1");
  }
  if (!(front_guard > 0.0) || !std::isfinite(front_guard)) {
    throw std::invalid_argument("SeriesPolicy: front_guard must be positive and finite");
  }
}

LightconeCoords lightcone_coords(double x, double t, double mu, double c) {
  LightconeCoords lc;
  lc.x = x;
  lc.t = t;
  const double ct = c * t;
  if (!(ct > x)) {
    lc.inside = false;
    return lc;
  }
  lc.inside = true;
  lc.eta = mu * std::sqrt((ct - x) * (ct + x));
  lc.xi = std::sqrt((ct + x) / (ct - x));
  return lc;
}

namespace detail {

namespace {

// First table size: enough for fast-converging ratios; grown on demand when
// the geometric ratio is near one and orders up to ~eta are required.
int initial_orders(double eta) {
  const int base = 48;
  return std::max(base, static_cast<int>(std::min(eta, 256.0)) + 24);
}

}  // namespace

SeriesWorkspace::SeriesWorkspace(const LightconeCoords& lc, double mu, double c,
                                 const SeriesPolicy& policy)
    : lc_(lc), mu_(mu), c_(c), policy_(policy) {
  if (!lc.inside) {
    throw std::logic_error("SeriesWorkspace: point outside the light cone");
  }
  policy_.validate();
  const double ct = c_ * lc_.t;
  const double r2 = (ct - lc_.x) * (ct + lc_.x);  // (c t)^2 - x^2
  eta_dot_ = mu_ * c_ * c_ * lc_.t * mu_ / lc_.eta;
  logxi_dot_ = -c_ * lc_.x / r2;
  table_ = bessel_j_sequence(lc_.eta, initial_orders(lc_.eta) + 1);
}

double SeriesWorkspace::j_deriv(int n) const { return bessel_j_derivative(table_, n); }

bool SeriesWorkspace::ensure_order(int n) {
  if (n + 1 <= table_.n_max()) return true;
  const int cap = policy_.max_terms + 1;
  if (table_.n_max() >= cap) return false;
  int target = std::max(n + 1, static_cast<int>(table_.n_max() * 1.6) + 8);
  target = std::min(target, cap);
  table_ = bessel_j_sequence(lc_.eta, target);
  return n + 1 <= table_.n_max();
}

ComponentResult eval_component(SeriesWorkspace& ws, std::complex<double> z, std::complex<double> k,
                               double omega_free, RepChoice choice, bool want_derivative) {
  const LightconeCoords& lc = ws.coords();
  bool use_a = false;
  switch (choice) {
    case RepChoice::ForceA: use_a = true; break;
    case RepChoice::ForceB: use_a = false; break;
    case RepChoice::Auto: use_a = lc.xi <= std::abs(z); break;
  }

  const std::complex<double> iu(0.0, 1.0);
  // A: ratio = xi/(i z); B: ratio = -i z / xi (the (-1)^n sign folded in).
  const std::complex<double> ratio = use_a ? lc.xi / (iu * z) : -(iu * z) / lc.xi;
  const double sign = use_a ? -1.0 : 1.0;
  const double eta_dot = ws.eta_dot();
  const double lxi_dot = ws.logxi_dot();

  std::complex<double> base_val, base_dval;
  if (use_a) {
    const std::complex<double> plane = std::exp(iu * (k * lc.x - omega_free * lc.t));
    base_val = plane + 0.5 * ws.j(0);
    base_dval = -iu * omega_free * plane + 0.5 * ws.j_deriv(0) * eta_dot;
  } else {
    base_val = 0.5 * ws.j(0);
    base_dval = 0.5 * ws.j_deriv(0) * eta_dot;
  }

  std::complex<double> sum = 0.0, dsum = 0.0;
  std::complex<double> rn = use_a ? std::complex<double>(1.0, 0.0) : ratio;
  const int n0 = use_a ? 0 : 1;
  const double tol = ws.policy().rel_tol;
  int small_run = 0;
  double residual = 0.0;
  double peak_partial = std::abs(base_val);

  const auto fail = [&](const char* why, double resid, int terms) {
    std::ostringstream msg;
    msg << "series " << why << " at x=" << lc.x << " t=" << lc.t << " (|z|=" << std::abs(z)
        << ", xi=" << lc.xi << "): residual " << resid << " after " << terms << " terms";
    throw TruncationFailure(msg.str(), resid, terms);
  };

  for (int n = n0;; ++n) {
    const bool have_order = ws.ensure_order(n);
    if (!have_order || n - n0 >= ws.policy().max_terms) {
      fail("truncation failure", residual, n - n0);
    }
    const double jn = ws.j(n);
    const std::complex<double> term = rn * jn;
    sum += term;
    std::complex<double> dterm = 0.0;
    if (want_derivative) {
      const double jpn = ws.j_deriv(n);
      dterm = rn * ((use_a ? n * lxi_dot : -n * lxi_dot) * jn + jpn * eta_dot);
      dsum += dterm;
    }

    const double vscale = std::max(std::abs(base_val + sign * sum), 1e-300);
    if (!std::isfinite(vscale) || !std::isfinite(std::abs(term))) {
      fail("representation overflow", std::numeric_limits<double>::infinity(), n - n0);
    }
    peak_partial = std::max(peak_partial, vscale);
    bool small = std::abs(term) <= tol * vscale;
    if (want_derivative && small) {
      const double dscale = std::max(std::abs(base_dval + sign * dsum), 1e-300);
      small = std::abs(dterm) <= tol * dscale;
    }
    residual = std::abs(term) / vscale;
    small_run = small ? small_run + 1 : 0;
    if (small_run >= ws.policy().consecutive_small) break;
    rn *= ratio;
  }

  // Rounding noise from cancellation between grown partial sums caps the
  // achievable accuracy; a result that cannot be meaningful is an error, not
  // a value.
  const double final_scale = std::max(std::abs(base_val + sign * sum), 1e-300);
  const double cancellation = peak_partial * 1.1e-16 / final_scale;
  if (cancellation > 1e-6) {
    fail("cancellation failure", cancellation, 0);
  }

  ComponentResult res;
  res.value = base_val + sign * sum;
  res.dvalue_dt = base_dval + sign * dsum;
  res.rep = use_a ? Representation::SeriesA : Representation::SeriesB;
  return res;
}

}  // namespace detail
}  // namespace kgt

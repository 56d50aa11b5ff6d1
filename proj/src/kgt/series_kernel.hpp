#pragma once

#include <complex>

#include "kgt/special_functions.hpp"

namespace kgt {

/// Truncation and front-window policy for the Bessel series evaluators.
struct SeriesPolicy {
  double rel_tol = 1e-12;
  int max_terms = 20000;
  int consecutive_small = 4;
  /// Switch to the front expansion when mu (ct - x) < front_guard.
  double front_guard = 1e-6;

  void validate() const;
};

enum class Representation {
  SeriesA,          ///< expansion carrying the explicit plane wave
  SeriesB,          ///< complementary expansion, convergent past |xi| = |z|
  FrontAsymptotic,  ///< expansion in mu (ct - x) next to the light cone
  LongTime,         ///< principal asymptotic form for t >> x/c
  OutsideCone,      ///< t < x/c, identically zero
};

/// Which series representation the evaluator may use.
enum class RepChoice { Auto, ForceA, ForceB };

/// Hyperbolic coordinates inside the light cone:
/// eta = mu sqrt(c^2 t^2 - x^2), xi = sqrt((ct + x)/(ct - x)).
struct LightconeCoords {
  double x = 0.0;
  double t = 0.0;
  double eta = 0.0;  ///< valid only when inside
  double xi = 0.0;   ///< valid only when inside
  bool inside = false;
};

LightconeCoords lightcone_coords(double x, double t, double mu, double c);

namespace detail {

struct ComponentResult {
  std::complex<double> value{};
  std::complex<double> dvalue_dt{};
  Representation rep = Representation::SeriesA;
};

/// Per-point state shared by every series component evaluated at one (x, t):
/// light-cone geometry, its time derivatives, and a Bessel table grown on
/// demand. Cheap to construct, never shared across threads.
class SeriesWorkspace {
public:
  SeriesWorkspace(const LightconeCoords& lc, double mu, double c, const SeriesPolicy& policy);

  const LightconeCoords& coords() const { return lc_; }
  const SeriesPolicy& policy() const { return policy_; }
  double mu() const { return mu_; }
  double c() const { return c_; }

  double j(int n) const { return table_.values[static_cast<std::size_t>(n)]; }
  double j_deriv(int n) const;

  /// Highest order n for which both J_n and J_n' are available.
  int highest_order() const { return table_.n_max() - 1; }

  /// Grow the table so that order n (and its derivative) is available.
  /// Returns false once the policy's max_terms cap is reached.
  bool ensure_order(int n);

  double eta_dot() const { return eta_dot_; }      ///< d eta / dt
  double logxi_dot() const { return logxi_dot_; }  ///< d(log xi) / dt

private:
  LightconeCoords lc_;
  double mu_;
  double c_;
  SeriesPolicy policy_;
  double eta_dot_;
  double logxi_dot_;
  BesselSequence table_;
};

/// One +/- component of the cut-off-wave series.
///
/// The A form is
///   exp(i(k x - omega_free t)) + J_0/2 - sum_{n>=0} (xi/(i z))^n J_n(eta)
/// and the B form is
///   J_0/2 + sum_{n>=1} (-1)^n (i z / xi)^n J_n(eta).
/// The two agree identically on the dispersion shell; Auto picks whichever
/// has geometric ratio of modulus <= 1 (A iff xi <= |z|).
///
/// The returned derivative is the term-wise d/dt of the same form; it does not
/// include any overall gauge phase. Throws TruncationFailure on non-convergence.
ComponentResult eval_component(SeriesWorkspace& ws, std::complex<double> z, std::complex<double> k,
                               double omega_free, RepChoice choice, bool want_derivative);

}  // namespace detail
}  // namespace kgt

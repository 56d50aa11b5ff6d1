#pragma once

#include <complex>
#include <vector>

#include "kgt/series_kernel.hpp"
#include "kgt/units.hpp"

namespace kgt {

enum class SolverKind { Source, KgShutter, DiracShutter, Schrodinger };

/// Provenance of a generated series: enough to reproduce the run.
struct SetupTag {
  SolverKind solver = SolverKind::Source;
  double E = 0.0;
  double V = 0.0;
  double hbar = 1.0;
  double mass = 1.0;
  double c = 1.0;
  SeriesPolicy policy{};
};

/// Density (and optionally the wave) on a uniform t-grid at fixed x.
struct TimeSeries {
  double x = 0.0;
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> rho;
  std::vector<std::complex<double>> psi;  ///< optional; empty when not recorded
  SetupTag tag{};

  int size() const { return static_cast<int>(rho.size()); }
  double t_at(int i) const { return t0 + dt * i; }
  double t_end() const { return t_at(size() - 1); }

  /// n >= 16, dt > 0, finite samples; throws std::invalid_argument.
  void validate() const;
};

/// Arrival time of the main wavefront: the global maximum of |rho| over
/// [x/c, t_end], refined by quadratic interpolation over three samples.
/// Throws NoPeakError when |rho| is monotone over the window.
double detect_main_wavefront(const TimeSeries& series);

enum class DelayClass { Delay, Advance, Zero, NotApplicable };

/// Relative arrival of the stepped main wavefront against the free (V = 0)
/// one measured on a shared grid. delta_t > 0 means the stepped wavefront
/// arrives later than the free one (a delay).
struct DelayMeasurement {
  double t_free = 0.0;
  double t_step = 0.0;
  double delta_t = 0.0;
  DelayClass classification = DelayClass::Zero;
};

/// zero_tol <= 0 selects the default of two grid steps.
DelayMeasurement measure_delay(const TimeSeries& free_series, const TimeSeries& step_series,
                               double zero_tol = 0.0);

/// Beat-frequency and envelope-decay estimates over t >= t_min.
struct BeatAnalysis {
  double omega_est = 0.0;
  double period_est = 0.0;
  double decay_exponent = 0.0;
  double fit_residual = 0.0;
  int n_periods_used = 0;
};

/// Detrends rho by the tail median, locates the dominant spectral line of the
/// tapered signal (with quadratic bin interpolation), and, when a second
/// strong line is present, reports the two-line splitting as the beat
/// frequency. The envelope decay exponent comes from a log-log fit of
/// per-period maxima of |rho - rho_stationary|.
/// Throws InsufficientPeriodsError / FlatSignalError.
BeatAnalysis extract_beats(const TimeSeries& series, double t_min);

/// Faster/slower-wavefront prediction from the energy comparison |eps| vs E:
/// Zero at |eps| = V/2, Delay for |eps| < E, Advance for |eps| > E; the
/// propagation regime always yields Delay. NotApplicable for evanescent or
/// band-edge setups and for Klein setups with V <= 2 mu.
DelayClass predict_delay_class(const PhysicalSetup& setup);

const char* to_string(DelayClass c);
const char* to_string(SolverKind k);

}  // namespace kgt

#pragma once

#include <complex>
#include <vector>

#include "kgt/analysis.hpp"
#include "kgt/series_kernel.hpp"

namespace kgt {

/// A solver run on a uniform t-grid at fixed x.
struct EvolveRequest {
  SolverKind solver = SolverKind::Source;
  double E = 1.0;
  double V = 0.0;
  double x = 0.0;
  double t_start = 0.0;
  double t_end = 1.0;
  int n_samples = 16;
  double hbar = 1.0;
  double mass = 1.0;
  double c = 1.0;
  SeriesPolicy policy{};

  /// Shutter solvers are free-particle only (V must be 0); t_end > t_start >= 0;
  /// n_samples >= 16.
  void validate() const;
};

struct EvolvePoint {
  std::complex<double> psi{};
  std::complex<double> psi2{};  ///< second spinor component (Dirac only)
  std::complex<double> dpsi_dt{};
  double rho = 0.0;
  Representation representation = Representation::OutsideCone;
};

/// Evaluates the requested solver over the grid, partitioned across threads
/// (results are identical regardless of the partition). n_threads <= 0 picks
/// the hardware concurrency. TruncationFailure is reported with the failing
/// row's t value.
std::vector<EvolvePoint> evolve_grid(const EvolveRequest& request, int n_threads = 0);

TimeSeries to_time_series(const EvolveRequest& request, const std::vector<EvolvePoint>& points);

}  // namespace kgt

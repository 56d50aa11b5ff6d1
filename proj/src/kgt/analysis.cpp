#include "kgt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kgt/errors.hpp"

namespace kgt {

namespace {

constexpr double kPi = std::numbers::pi;

// Iterative radix-2 FFT, forward transform in place.
void fft_inplace(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Parabolic refinement through three points (x spaced by h around x1).
// Returns the abscissa offset in units of h, clamped to [-0.5, 0.5].
double parabolic_offset(double ym, double y0, double yp) {
  const double denom = ym - 2.0 * y0 + yp;
  if (denom == 0.0) return 0.0;
  return std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
}

struct Peak {
  int index = -1;
  double t = 0.0;
  double value = 0.0;
};

// Global maximum of |rho| over [t_lo, series end], parabola-refined.
Peak find_abs_peak(const TimeSeries& s, double t_lo) {
  Peak peak;
  int first = 0;
  while (first < s.size() && s.t_at(first) < t_lo) ++first;
  if (s.size() - first < 3) return peak;
  int imax = first;
  double vmax = std::abs(s.rho[static_cast<std::size_t>(first)]);
  for (int i = first + 1; i < s.size(); ++i) {
    const double v = std::abs(s.rho[static_cast<std::size_t>(i)]);
    if (v > vmax) {
      vmax = v;
      imax = i;
    }
  }
  peak.index = imax;
  peak.value = vmax;
  peak.t = s.t_at(imax);
  if (imax > first && imax < s.size() - 1) {
    const double ym = std::abs(s.rho[static_cast<std::size_t>(imax) - 1]);
    const double yp = std::abs(s.rho[static_cast<std::size_t>(imax) + 1]);
    peak.t += s.dt * parabolic_offset(ym, vmax, yp);
  }
  return peak;
}

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  std::nth_element(v.begin(), v.begin() + n / 2, v.end());
  double m = v[n / 2];
  if (n % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + n / 2 - 1, v.end());
    m = 0.5 * (m + v[n / 2 - 1]);
  }
  return m;
}

struct SpectralLine {
  int bin = -1;
  double omega = 0.0;
  double magnitude = 0.0;
};

SpectralLine refine_line(const std::vector<double>& mag, int bin, double domega) {
  SpectralLine line;
  line.bin = bin;
  line.magnitude = mag[static_cast<std::size_t>(bin)];
  double off = 0.0;
  if (bin > 0 && bin + 1 < static_cast<int>(mag.size())) {
    const double lm = std::log(std::max(mag[static_cast<std::size_t>(bin) - 1], 1e-300));
    const double l0 = std::log(std::max(mag[static_cast<std::size_t>(bin)], 1e-300));
    const double lp = std::log(std::max(mag[static_cast<std::size_t>(bin) + 1], 1e-300));
    off = parabolic_offset(lm, l0, lp);
  }
  line.omega = (bin + off) * domega;
  return line;
}

}  // namespace

void TimeSeries::validate() const {
  if (size() < 16) throw std::invalid_argument("TimeSeries: need at least 16 samples");
  if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0)) {
    throw std::invalid_argument("TimeSeries: bad grid");
  }
  for (double v : rho) {
    if (!std::isfinite(v)) throw std::invalid_argument("TimeSeries: non-finite sample");
  }
  if (!psi.empty() && psi.size() != rho.size()) {
    throw std::invalid_argument("TimeSeries: psi/rho length mismatch");
  }
}

double detect_main_wavefront(const TimeSeries& series) {
  series.validate();
  const double t_front = series.x / series.tag.c;
  const Peak peak = find_abs_peak(series, t_front);
  if (peak.index < 0) {
    throw NoPeakError("detect_main_wavefront: window too short");
  }
  // A maximum sitting on the window edge means |rho| is monotone there.
  int first = 0;
  while (first < series.size() && series.t_at(first) < t_front) ++first;
  if (peak.index <= first || peak.index >= series.size() - 1) {
    throw NoPeakError("detect_main_wavefront: |rho| has no interior maximum in the window");
  }
  return peak.t;
}

DelayMeasurement measure_delay(const TimeSeries& free_series, const TimeSeries& step_series,
                               double zero_tol) {
  free_series.validate();
  step_series.validate();
  if (free_series.x != step_series.x || free_series.t0 != step_series.t0 ||
      free_series.dt != step_series.dt || free_series.size() != step_series.size()) {
    throw std::invalid_argument("measure_delay: series must share x and the t-grid");
  }
  if (zero_tol <= 0.0) zero_tol = 2.0 * free_series.dt;

  DelayMeasurement m;
  m.t_free = detect_main_wavefront(free_series);
  m.t_step = detect_main_wavefront(step_series);
  // Positive when the stepped wavefront arrives after the free one.
  m.delta_t = m.t_step - m.t_free;
  if (std::abs(m.delta_t) < zero_tol) {
    m.classification = DelayClass::Zero;
  } else {
    m.classification = m.delta_t > 0.0 ? DelayClass::Delay : DelayClass::Advance;
  }
  return m;
}

BeatAnalysis extract_beats(const TimeSeries& series, double t_min) {
  series.validate();
  int first = 0;
  while (first < series.size() && series.t_at(first) < t_min) ++first;
  const int n = series.size() - first;
  if (n < 16) throw InsufficientPeriodsError("extract_beats: too few samples past t_min");

  std::vector<double> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = series.rho[static_cast<std::size_t>(first + i)];

  // Stationary baseline: median of the final 10% (robust to residual beats).
  const int tail = std::max(8, n / 10);
  std::vector<double> tail_vals(d.end() - tail, d.end());
  const double stationary = median_of(std::move(tail_vals));
  double amp = 0.0;
  for (auto& v : d) {
    v -= stationary;
    amp = std::max(amp, std::abs(v));
  }
  if (amp < 1e-12 * std::max(std::abs(stationary), 1e-300)) {
    throw FlatSignalError("extract_beats: oscillation amplitude below 1e-12 of the stationary value");
  }

  // Tapered spectrum of the detrended signal.
  const std::size_t nfft = next_pow2(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> buf(nfft, {0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (n - 1));  // Hann
    buf[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)] * w;
  }
  fft_inplace(buf);
  const int nbins = static_cast<int>(nfft / 2);
  std::vector<double> mag(static_cast<std::size_t>(nbins), 0.0);
  for (int i = 0; i < nbins; ++i) mag[static_cast<std::size_t>(i)] = std::abs(buf[static_cast<std::size_t>(i)]);
  const double domega = 2.0 * kPi / (static_cast<double>(nfft) * series.dt);

  // Dominant line; the lowest bins hold leftover drift, never a usable line.
  const int min_bin = 3;
  int m1 = min_bin;
  for (int i = min_bin + 1; i < nbins; ++i) {
    if (mag[static_cast<std::size_t>(i)] > mag[static_cast<std::size_t>(m1)]) m1 = i;
  }
  const SpectralLine line1 = refine_line(mag, m1, domega);

  // Second line away from the main lobe: a two-line spectrum is a beat, and
  // the splitting is the beat frequency.
  const int lobe = 4;
  int m2 = -1;
  for (int i = min_bin + 1; i + 1 < nbins; ++i) {
    if (std::abs(i - m1) <= lobe) continue;
    if (mag[static_cast<std::size_t>(i)] >= mag[static_cast<std::size_t>(i) - 1] &&
        mag[static_cast<std::size_t>(i)] >= mag[static_cast<std::size_t>(i) + 1]) {
      if (m2 < 0 || mag[static_cast<std::size_t>(i)] > mag[static_cast<std::size_t>(m2)]) m2 = i;
    }
  }

  // Two-line threshold: must clear the Hann sidelobe level (~2.8% of the
  // main line) while catching strongly asymmetric quadrature pairs, whose
  // weak line scales like (|omega_fast| - Omega/2)/(|omega_fast| + Omega/2).
  BeatAnalysis out;
  if (m2 >= 0 && mag[static_cast<std::size_t>(m2)] >= 0.06 * line1.magnitude) {
    const SpectralLine line2 = refine_line(mag, m2, domega);
    out.omega_est = std::abs(line1.omega - line2.omega);
  } else {
    out.omega_est = line1.omega;
  }
  if (!(out.omega_est > 0.0)) throw FlatSignalError("extract_beats: no usable spectral line");
  out.period_est = 2.0 * kPi / out.omega_est;

  // Envelope: per-period maxima of |rho - stationary|, parabola-refined.
  const double t_start = series.t_at(first);
  const double span = series.dt * (n - 1);
  const int periods = static_cast<int>(std::floor(span / out.period_est));
  if (periods < 5) throw InsufficientPeriodsError("extract_beats: fewer than 5 periods past t_min");

  std::vector<double> log_t, log_env;
  for (int p = 0; p < periods; ++p) {
    const double w0 = t_start + p * out.period_est;
    const double w1 = w0 + out.period_est;
    int i0 = static_cast<int>(std::ceil((w0 - t_start) / series.dt));
    int i1 = static_cast<int>(std::floor((w1 - t_start) / series.dt));
    i1 = std::min(i1, n - 1);
    if (i1 - i0 < 4) continue;
    int imax = i0, imin = i0;
    for (int i = i0 + 1; i <= i1; ++i) {
      if (d[static_cast<std::size_t>(i)] > d[static_cast<std::size_t>(imax)]) imax = i;
      if (d[static_cast<std::size_t>(i)] < d[static_cast<std::size_t>(imin)]) imin = i;
    }
    // An extreme on the window edge is a clipped crest, not an envelope sample.
    if (imax == i0 || imax == i1 || imin == i0 || imin == i1) continue;
    // Symmetrised envelope (max - min)/2: any residual detrending offset
    // cancels between the positive and negative crests.
    const auto refine = [&](int i, double& value, double& tc) {
      const double ym = d[static_cast<std::size_t>(i) - 1];
      const double y0 = d[static_cast<std::size_t>(i)];
      const double yp = d[static_cast<std::size_t>(i) + 1];
      const double off = parabolic_offset(ym, y0, yp);
      tc = t_start + (i + off) * series.dt;
      value = y0 + 0.25 * (yp - ym) * off;
    };
    double vmax, tmax, vmin, tmin;
    refine(imax, vmax, tmax);
    refine(imin, vmin, tmin);
    const double env = 0.5 * (vmax - vmin);
    const double tpk = 0.5 * (tmax + tmin);
    if (env > 0.0 && tpk > 0.0) {
      log_t.push_back(std::log(tpk));
      log_env.push_back(std::log(env));
    }
  }
  const int used = static_cast<int>(log_t.size());
  if (used < 5) throw InsufficientPeriodsError("extract_beats: fewer than 5 usable envelope maxima");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < used; ++i) {
    sx += log_t[static_cast<std::size_t>(i)];
    sy += log_env[static_cast<std::size_t>(i)];
    sxx += log_t[static_cast<std::size_t>(i)] * log_t[static_cast<std::size_t>(i)];
    sxy += log_t[static_cast<std::size_t>(i)] * log_env[static_cast<std::size_t>(i)];
  }
  const double denom = used * sxx - sx * sx;
  const double slope = (used * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / used;
  double ss = 0.0;
  for (int i = 0; i < used; ++i) {
    const double r = log_env[static_cast<std::size_t>(i)] - (slope * log_t[static_cast<std::size_t>(i)] + intercept);
    ss += r * r;
  }
  out.decay_exponent = slope;
  out.fit_residual = std::sqrt(ss / used);
  out.n_periods_used = used;
  return out;
}

DelayClass predict_delay_class(const PhysicalSetup& setup) {
  const RegimeClassification rc = classify_regime(setup);
  const double mu = setup.mu();
  const double eps = setup.epsilon();
  const double tol = 1e-12 * std::max({1.0, std::abs(setup.E), setup.V});
  switch (rc.regime) {
    case Regime::Propagation:
      if (setup.V == 0.0) return DelayClass::Zero;  // identical runs
      return DelayClass::Delay;
    case Regime::KleinTunneling: {
      if (!(setup.V > 2.0 * mu)) return DelayClass::NotApplicable;
      const double abs_eps = std::abs(eps);
      if (std::abs(abs_eps - 0.5 * setup.V) <= tol) return DelayClass::Zero;
      return abs_eps < setup.E ? DelayClass::Delay : DelayClass::Advance;
    }
    case Regime::Evanescent:
    case Regime::BoundaryUpper:
    case Regime::BoundaryLower:
      return DelayClass::NotApplicable;
  }
  return DelayClass::NotApplicable;
}

const char* to_string(DelayClass c) {
  switch (c) {
    case DelayClass::Delay: return "delay";
    case DelayClass::Advance: return "advance";
    case DelayClass::Zero: return "zero";
    case DelayClass::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

const char* to_string(SolverKind k) {
  switch (k) {
    case SolverKind::Source: return "source";
    case SolverKind::KgShutter: return "kg_shutter";
    case SolverKind::DiracShutter: return "dirac_shutter";
    case SolverKind::Schrodinger: return "schrodinger";
  }
  return "unknown";
}

}  // namespace kgt

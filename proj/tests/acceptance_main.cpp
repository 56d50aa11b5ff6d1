// Acceptance suite: end-to-end checks of the measurable claims, one
// pass/fail line per criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kgt/analysis.hpp"
#include "kgt/errors.hpp"
#include "kgt/evolve.hpp"
#include "kgt/nonrel.hpp"
#include "kgt/shutter.hpp"
#include "kgt/source_solution.hpp"
#include "kgt/special_functions.hpp"
#include "kgt/units.hpp"
#include "oracles.hpp"

using namespace kgt;
using C = std::complex<double>;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %d. %s  --  %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

TimeSeries run(SolverKind solver, double E, double V, double x, double t0, double t1, int n) {
  EvolveRequest req;
  req.solver = solver;
  req.E = E;
  req.V = V;
  req.x = x;
  req.t_start = t0;
  req.t_end = t1;
  req.n_samples = n;
  return to_time_series(req, evolve_grid(req));
}

DelayMeasurement delay_pair(double E, double V, double x) {
  const auto free_series = run(SolverKind::Source, E, 0.0, x, 9.0, 60.0, 2048);
  const auto step_series = run(SolverKind::Source, E, V, x, 9.0, 60.0, 2048);
  return measure_delay(free_series, step_series, 0.0);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

}  // namespace

// --- criteria -------------------------------------------------------------

static BeatAnalysis g_source_beats;
static TimeSeries g_source_series;

static void criterion_1_beat_period() {
  const auto start = std::chrono::steady_clock::now();
  g_source_series = run(SolverKind::Source, 10.0, 0.5, 10.0, 50.0, 200.0, 4096);
  g_source_beats = extract_beats(g_source_series, 50.0);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double period_err = std::abs(g_source_beats.period_est - oracle::kPi) / oracle::kPi;
  criterion(1, "beat period = pi within 2% (source, E=10, V=0.5, x=10), < 10 s for 4096 samples",
            period_err < 0.02 && seconds < 10.0,
            fmt("period = %.5f (err %.3f%%), runtime %.2f s", g_source_beats.period_est,
                100.0 * period_err, seconds));
}

static BeatAnalysis g_kg_beats;
static BeatAnalysis g_dirac_beats;

static void criterion_2_decay_exponents() {
  const auto kg_series = run(SolverKind::KgShutter, 10.0, 0.0, 10.0, 50.0, 200.0, 4096);
  g_kg_beats = extract_beats(kg_series, 50.0);
  // the t^{-1/2} law needs t >> x: fit window pushed past the x/t transient
  const auto dirac_series = run(SolverKind::DiracShutter, 10.0, 0.0, 10.0, 100.0, 500.0, 4096);
  g_dirac_beats = extract_beats(dirac_series, 100.0);
  const bool ok_source = std::abs(g_source_beats.decay_exponent + 1.5) < 0.1;
  const bool ok_kg = std::abs(g_kg_beats.decay_exponent + 0.5) < 0.1;
  const bool ok_dirac = std::abs(g_dirac_beats.decay_exponent + 0.5) < 0.1;
  criterion(2, "decay exponents: source -1.5 +- 0.1, shutters -0.5 +- 0.1",
            ok_source && ok_kg && ok_dirac,
            fmt("source %.3f, scalar shutter %.3f, spinor shutter %.3f",
                g_source_beats.decay_exponent, g_kg_beats.decay_exponent,
                g_dirac_beats.decay_exponent));
}

static void criterion_3_zbw_frequency() {
  const bool ok = std::abs(g_source_beats.omega_est - 2.0) < 0.04 &&
                  std::abs(g_kg_beats.omega_est - 2.0) < 0.04 &&
                  std::abs(g_dirac_beats.omega_est - 2.0) < 0.04;
  criterion(3, "beat frequency = 2 mu c within 2% for all three solvers", ok,
            fmt("source %.4f, scalar shutter %.4f, spinor shutter %.4f", g_source_beats.omega_est,
                g_kg_beats.omega_est, g_dirac_beats.omega_est));
}

static void criterion_4_super_klein() {
  const auto m = delay_pair(1.5, 3.0, 10.0);
  const double dt = (60.0 - 9.0) / 2047.0;
  criterion(4, "super-Klein zero delay: E=1.5, V=3, x=10 -> |dt| < 2 grid steps",
            std::abs(m.delta_t) < 2.0 * dt && m.classification == DelayClass::Zero,
            fmt("delta_t = %.5f, 2 steps = %.5f", m.delta_t, 2.0 * dt));
}

static void criterion_5_delay_signs() {
  const auto klein_delay = delay_pair(1.8, 3.0, 10.0);
  const auto klein_advance = delay_pair(1.2, 3.0, 10.0);
  const auto propagation = delay_pair(1.6, 0.2, 10.0);
  const bool ok = klein_delay.delta_t > 0.0 && klein_advance.delta_t < 0.0 &&
                  propagation.delta_t > 0.0 &&
                  klein_delay.classification == DelayClass::Delay &&
                  klein_advance.classification == DelayClass::Advance &&
                  propagation.classification == DelayClass::Delay;
  criterion(5, "delay signs: (1.8,3) > 0, (1.2,3) < 0, (1.6,0.2) > 0", ok,
            fmt("measured %+.3f, %+.3f, %+.3f", klein_delay.delta_t, klein_advance.delta_t,
                propagation.delta_t));
}

static void criterion_6_stationary_limits() {
  const PhysicalSetup source{1, 1, 1, 1.6, 0.2};
  double worst_source = 0.0;
  for (double t = 200.5; t <= 260.0; t += 2.3) {
    worst_source = std::max(worst_source, std::abs(psi_source(10.0, t, source).rho - 1.4) / 1.4);
  }
  const ShutterSetup shutter{1, 1, 1, 10.0};
  double worst_kg = 0.0;
  for (double t : {2500.0, 3000.0, 4000.0}) {
    worst_kg = std::max(worst_kg, std::abs(psi_kg_shutter(10.0, t, shutter).rho - 10.0) / 10.0);
  }
  double worst_dirac = 0.0;
  for (double t : {1000.0, 2000.0, 3000.0}) {
    worst_dirac = std::max(worst_dirac, std::abs(dirac_shutter(10.0, t, shutter).rho - 20.0) / 20.0);
  }
  criterion(6, "stationary limits: source -> eps (t > 200), scalar -> E, spinor -> 2E (1%)",
            worst_source < 0.01 && worst_kg < 0.01 && worst_dirac < 0.01,
            fmt("relative offsets: source %.4f, scalar %.4f, spinor %.4f", worst_source, worst_kg,
                worst_dirac));
}

static void criterion_7_property_suite() {
  std::ostringstream notes;
  bool ok = true;

  // causality: exact zeros outside the cone
  {
    bool causal = true;
    const PhysicalSetup setup{1, 1, 1, 1.8, 3.0};
    const ShutterSetup shutter{1, 1, 1, 10.0};
    for (double t : {-3.0, 0.0, 9.9999}) {
      const auto s = psi_source(10.0, t, setup);
      causal = causal && s.psi == C{} && s.rho == 0.0;
      const auto kg = psi_kg_shutter(10.0, t, shutter);
      causal = causal && kg.psi == C{} && kg.rho == 0.0;
      const auto d = dirac_shutter(10.0, t, shutter);
      causal = causal && d.psi1 == C{} && d.psi2 == C{} && d.rho == 0.0;
    }
    ok = ok && causal;
    notes << "causality " << (causal ? "exact" : "BROKEN");
  }

  // representation agreement to 1e-10 where both forms are fp-meaningful
  {
    bool match = true;
    double worst = 0.0;
    for (auto [E, V, x, t] : {std::tuple{10.0, 0.5, 0.25, 0.9}, {10.0, 0.5, 0.4, 1.0},
                              {1.8, 3.0, 4.0, 9.0}, {3.0, 3.0, 3.0, 8.0},
                              {3.5, 3.0, 2.0, 6.0}, {2.0, 1.0, 5.0, 12.0},
                              {1.2, 3.0, 1.0, 3.2}}) {
      const PhysicalSetup setup{1, 1, 1, E, V};
      const auto a = psi_source(x, t, setup, {}, RepChoice::ForceA);
      const auto b = psi_source(x, t, setup, {}, RepChoice::ForceB);
      const double rel = std::abs(a.psi - b.psi) / std::abs(a.psi);
      worst = std::max(worst, rel);
      match = match && rel <= 1e-10;
    }
    ok = ok && match;
    notes << ", repr agreement worst " << worst;
  }

  // boundary condition at x = 0 across all regimes
  {
    double worst = 0.0;
    for (auto [E, V] : {std::pair{1.6, 0.2}, {10.0, 0.5}, {1.8, 3.0}, {1.2, 3.0}, {3.0, 3.0},
                        {2.5, 3.0}}) {
      const PhysicalSetup setup{1, 1, 1, E, V};
      for (double t : {0.5, 3.0, 11.0, 37.0}) {
        const auto s = psi_source(0.0, t, setup);
        worst = std::max(worst, std::abs(s.psi - std::exp(C(0, -E * t))));
      }
    }
    ok = ok && worst < 1e-8;
    notes << ", boundary worst " << worst;
  }

  // field-equation residuals under 4th-order finite differences
  {
    double worst = 0.0;
    for (auto [E, V, x, t] : {std::tuple{1.6, 0.2, 3.0, 7.0}, {10.0, 0.5, 10.0, 40.0},
                              {1.2, 3.0, 10.0, 18.0}, {3.0, 3.0, 2.0, 9.0}}) {
      const PhysicalSetup setup{1, 1, 1, E, V};
      const double h = 0.01;
      const auto f_t = [&](double tt) { return psi_source(x, tt, setup).psi; };
      const auto f_x = [&](double xx) { return psi_source(xx, t, setup).psi; };
      const C psi = psi_source(x, t, setup).psi;
      const C resid = oracle::fd_second(f_x, x, h) - psi - oracle::fd_second(f_t, t, h) -
                      C(0, 2.0 * V) * oracle::fd_first(f_t, t, h) + V * V * psi;
      const double scale = std::max(
          {std::abs(psi), std::abs(oracle::fd_second(f_t, t, h)), std::abs(oracle::fd_second(f_x, x, h)), 1.0});
      worst = std::max(worst, std::abs(resid) / scale);
    }
    const ShutterSetup shutter{1, 1, 1, 10.0};
    {
      const double h = 0.005, x = 10.0, t = 40.0;
      const auto p1t = [&](double tt) { return dirac_shutter(x, tt, shutter).psi1; };
      const auto p2t = [&](double tt) { return dirac_shutter(x, tt, shutter).psi2; };
      const auto p1x = [&](double xx) { return dirac_shutter(xx, t, shutter).psi1; };
      const auto p2x = [&](double xx) { return dirac_shutter(xx, t, shutter).psi2; };
      const auto smp = dirac_shutter(x, t, shutter);
      const C i{0, 1};
      const C r1 = oracle::fd_first(p1t, t, h) / i + oracle::fd_first(p2x, x, h) / i + smp.psi1;
      const C r2 = oracle::fd_first(p2t, t, h) / i + oracle::fd_first(p1x, x, h) / i - smp.psi2;
      const double scale = 10.0 * std::max({std::abs(smp.psi1), std::abs(smp.psi2), 1.0});
      worst = std::max({worst, std::abs(r1) / scale, std::abs(r2) / scale});
    }
    ok = ok && worst < 1e-5;
    notes << ", residual worst " << worst;
  }

  // analytic derivative vs finite differences
  {
    double worst = 0.0;
    for (auto [E, V, x, t] : {std::tuple{1.6, 0.2, 10.0, 14.0}, {10.0, 0.5, 10.0, 40.0},
                              {1.2, 3.0, 10.0, 18.0}, {3.0, 3.0, 2.0, 9.0}}) {
      const PhysicalSetup setup{1, 1, 1, E, V};
      const double h = 0.02 / std::max({1.0, std::abs(E)});
      const auto f = [&](double tt) { return psi_source(x, tt, setup).psi; };
      const C fd = oracle::fd_first(f, t, h);
      const C an = dpsi_dt_source(x, t, setup);
      worst = std::max(worst, std::abs(an - fd) / std::abs(an));
    }
    ok = ok && worst < 1e-6;
    notes << ", dpsi/dt worst " << worst;
  }

  // Bessel sum rule and Faddeeva reflection
  {
    const auto seq = bessel_j_sequence(137.0, 400);
    double sum = seq.values[0];
    for (int n = 2; n <= 400; n += 2) sum += 2.0 * seq.values[static_cast<std::size_t>(n)];
    const bool bessel_ok = std::abs(sum - 1.0) < 1e-12;
    std::mt19937_64 rng = oracle::seeded_rng(73);
    std::uniform_real_distribution<double> re(-3.5, 3.5), im(0.02, 3.5);
    bool faddeeva_ok = true;
    for (int i = 0; i < 100; ++i) {
      const C z(re(rng), im(rng));
      const C lhs = faddeeva_w(-z);
      const C rhs = 2.0 * std::exp(-z * z) - faddeeva_w(z);
      faddeeva_ok = faddeeva_ok && std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs));
    }
    ok = ok && bessel_ok && faddeeva_ok;
    notes << ", sum rule " << std::abs(sum - 1.0) << ", reflection "
          << (faddeeva_ok ? "ok" : "BROKEN");
  }

  criterion(7, "property suite (causality, representations, boundary, residuals, kernels)", ok,
            notes.str());
}

static void criterion_8_asymptotic_fidelity() {
  bool ok = true;
  double worst_ratio = 0.0;
  const PhysicalSetup source{1, 1, 1, 10.0, 0.5};
  const ShutterSetup shutter{1, 1, 1, 10.0};
  for (double t0 : {52.0, 65.0, 85.0, 120.0, 199.0}) {
    double amp_src = 0, amp_kg = 0, amp_d = 0;
    double lo_s = 1e300, hi_s = -1e300, lo_k = 1e300, hi_k = -1e300, lo_d = 1e300, hi_d = -1e300;
    for (int i = 0; i < 160; ++i) {
      const double t = t0 - oracle::kPi / 2 + oracle::kPi * i / 159.0;
      const double rs = psi_source(10.0, t, source).rho;
      const double rk = psi_kg_shutter(10.0, t, shutter).rho;
      const double rd = dirac_shutter(10.0, t, shutter).rho;
      lo_s = std::min(lo_s, rs); hi_s = std::max(hi_s, rs);
      lo_k = std::min(lo_k, rk); hi_k = std::max(hi_k, rk);
      lo_d = std::min(lo_d, rd); hi_d = std::max(hi_d, rd);
    }
    amp_src = 0.5 * (hi_s - lo_s);
    amp_kg = 0.5 * (hi_k - lo_k);
    amp_d = 0.5 * (hi_d - lo_d);
    for (int i = 0; i < 60; ++i) {
      const double t = t0 - oracle::kPi / 2 + oracle::kPi * i / 59.0;
      const double es = std::abs(psi_source(10.0, t, source).rho -
                                 rho_longtime_source(10.0, t, source).rho_total) / amp_src;
      const double ek = std::abs(psi_kg_shutter(10.0, t, shutter).rho -
                                 rho_kg_longtime(10.0, t, shutter).rho_total) / amp_kg;
      const double ed = std::abs(dirac_shutter(10.0, t, shutter).rho -
                                 rho_dirac_longtime(10.0, t, shutter).rho_total) / amp_d;
      worst_ratio = std::max({worst_ratio, es, ek, ed});
    }
  }
  ok = worst_ratio < 0.05;
  criterion(8, "asymptotic densities track the exact ones within 5% of local amplitude", ok,
            fmt("worst pointwise error / local amplitude = %.4f", worst_ratio));
}

static void criterion_9_nonrelativistic_limit() {
  // closed-form kernel vs direct contour quadrature
  std::mt19937_64 rng = oracle::seeded_rng(101);
  std::uniform_real_distribution<double> xs(0.3, 3.0), qs(-2.5, 2.5), ts(0.5, 6.0);
  double worst_quad = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = xs(rng), q = qs(rng), t = ts(rng);
    const C closed = moshinsky_m({x, q, t, 2.0});
    const C quad = oracle::moshinsky_bromwich(x, q, t, 2.0);
    worst_quad = std::max(worst_quad, std::abs(closed - quad) / std::max(std::abs(quad), 1e-12));
  }

  // discrepancy strictly decreasing at matched kinetic energy
  double prev = 1e300;
  bool decreasing = true;
  std::ostringstream seq;
  for (double k : {0.2, 0.1, 0.05}) {
    const double eps = std::sqrt(k * k + 1.0);
    const PhysicalSetup setup{1, 1, 1, eps, 0.0};
    const double wkin = 0.5 * k * k;
    const double t0 = 5.0 / wkin, t1 = 40.0 / wkin;
    double worst = 0.0;
    for (int i = 0; i <= 256; ++i) {
      const double t = t0 + (t1 - t0) * i / 256.0;
      const double rkg = psi_source(2.0, t, setup).rho;
      const double rs = std::norm(psi_schrodinger_step(2.0, t, setup));
      worst = std::max(worst, std::abs(rkg - rs));
    }
    decreasing = decreasing && worst < prev;
    prev = worst;
    seq << " " << worst;
  }
  criterion(9, "non-relativistic limit: kernel quadrature 1e-6, discrepancy decreasing in k",
            worst_quad < 1e-6 && decreasing,
            "quadrature worst " + std::to_string(worst_quad) + ", discrepancies" + seq.str());
}

int main() {
  try {
    criterion_1_beat_period();
    criterion_2_decay_exponents();
    criterion_3_zbw_frequency();
    criterion_4_super_klein();
    criterion_5_delay_signs();
    criterion_6_stationary_limits();
    criterion_7_property_suite();
    criterion_8_asymptotic_fidelity();
    criterion_9_nonrelativistic_limit();
  } catch (const std::exception& e) {
    std::printf("[FAIL] unexpected exception: %s\n", e.what());
    ++g_failures;
  }
  std::printf("%d/9 criteria passed\n", 9 - g_failures);
  return g_failures;
}

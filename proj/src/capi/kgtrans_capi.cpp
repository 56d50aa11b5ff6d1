#include "kgtrans/kgtrans.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <string>

#include "kgt/analysis.hpp"
#include "kgt/errors.hpp"
#include "kgt/evolve.hpp"
#include "kgt/nonrel.hpp"
#include "kgt/shutter.hpp"
#include "kgt/source_solution.hpp"
#include "kgt/special_functions.hpp"
#include "kgt/units.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : ""; }

template <typename Fn>
kgt_status guarded(kgt_eval_diag* diag, Fn&& fn) {
  if (diag) {
    diag->fail_index = -1;
    diag->attained_residual = 0.0;
    diag->terms_used = 0;
  }
  try {
    fn();
    return KGT_OK;
  } catch (const kgt::TruncationFailure& e) {
    set_error(e.what());
    if (diag) {
      diag->attained_residual = e.attained_residual();
      diag->terms_used = e.terms_used();
      const std::string what = e.what();
      const auto pos = what.find("(row ");
      if (pos != std::string::npos) diag->fail_index = std::atol(what.c_str() + pos + 5);
    }
    return KGT_ERR_TRUNCATION;
  } catch (const kgt::NoPeakError& e) {
    set_error(e.what());
    return KGT_ERR_NO_PEAK;
  } catch (const kgt::InsufficientPeriodsError& e) {
    set_error(e.what());
    return KGT_ERR_INSUFFICIENT_PERIODS;
  } catch (const kgt::FlatSignalError& e) {
    set_error(e.what());
    return KGT_ERR_FLAT_SIGNAL;
  } catch (const kgt::FrontGuardError& e) {
    set_error(e.what());
    return KGT_ERR_DOMAIN;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return KGT_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return KGT_ERR_INVALID;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return KGT_ERR_INVALID;
  } catch (const std::exception& e) {
    set_error(e.what());
    return KGT_ERR_INTERNAL;
  }
}

kgt_representation to_c(kgt::Representation r) {
  switch (r) {
    case kgt::Representation::SeriesA: return KGT_REP_SERIES_A;
    case kgt::Representation::SeriesB: return KGT_REP_SERIES_B;
    case kgt::Representation::FrontAsymptotic: return KGT_REP_FRONT;
    case kgt::Representation::LongTime: return KGT_REP_LONGTIME;
    case kgt::Representation::OutsideCone: return KGT_REP_OUTSIDE_CONE;
  }
  return KGT_REP_OUTSIDE_CONE;
}

kgt_delay_class to_c(kgt::DelayClass c) {
  switch (c) {
    case kgt::DelayClass::Delay: return KGT_DELAY;
    case kgt::DelayClass::Advance: return KGT_ADVANCE;
    case kgt::DelayClass::Zero: return KGT_ZERO;
    case kgt::DelayClass::NotApplicable: return KGT_NOT_APPLICABLE;
  }
  return KGT_NOT_APPLICABLE;
}

kgt_sample to_c(const kgt::EvolvePoint& p) {
  kgt_sample s;
  s.psi_re = p.psi.real();
  s.psi_im = p.psi.imag();
  s.psi2_re = p.psi2.real();
  s.psi2_im = p.psi2.imag();
  s.dpsi_dt_re = p.dpsi_dt.real();
  s.dpsi_dt_im = p.dpsi_dt.imag();
  s.rho = p.rho;
  s.representation = to_c(p.representation);
  return s;
}

kgt::TimeSeries make_series(double x, double c, double t0, double dt, const double* rho, long n) {
  kgt::TimeSeries s;
  s.x = x;
  s.t0 = t0;
  s.dt = dt;
  s.tag.c = c;
  s.rho.assign(rho, rho + n);
  return s;
}

}  // namespace

struct kgt_solver {
  kgt::EvolveRequest request;  // grid fields filled per call
};

extern "C" {

const char* kgt_version(void) { return "1.0.0"; }

const char* kgt_status_message(kgt_status s) {
  switch (s) {
    case KGT_OK: return "ok";
    case KGT_ERR_INVALID: return "invalid argument";
    case KGT_ERR_TRUNCATION: return "series truncation failure";
    case KGT_ERR_NO_PEAK: return "no wavefront peak in the window";
    case KGT_ERR_INSUFFICIENT_PERIODS: return "too few beat periods";
    case KGT_ERR_FLAT_SIGNAL: return "oscillation amplitude negligible";
    case KGT_ERR_DOMAIN: return "outside the operation's domain";
    case KGT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* kgt_last_error(void) { return g_last_error.c_str(); }

kgt_status kgt_classify(double E, double V, double hbar, double mass, double c,
                        kgt_regime_info* out) {
  if (!out) {
    set_error("kgt_classify: out must not be NULL");
    return KGT_ERR_INVALID;
  }
  return guarded(nullptr, [&] {
    const kgt::PhysicalSetup setup{hbar, mass, c, E, V};
    const auto rc = kgt::classify_regime(setup);
    const auto [zp, zm] = kgt::z_plus_minus(setup, rc.k);
    out->regime = static_cast<int>(rc.regime);
    out->k_re = rc.k.real();
    out->k_im = rc.k.imag();
    out->z_plus_re = zp.real();
    out->z_plus_im = zp.imag();
    out->z_minus_re = zm.real();
    out->z_minus_im = zm.imag();
    out->mu = setup.mu();
    out->epsilon = setup.epsilon();
    out->omega_zbw = setup.omega_zbw();
    out->predicted_delay = to_c(kgt::predict_delay_class(setup));
  });
}

kgt_solver* kgt_solver_new(kgt_solver_kind kind, double E, double V, double hbar, double mass,
                           double c) {
  kgt::EvolveRequest req;
  req.solver = static_cast<kgt::SolverKind>(kind);
  req.E = E;
  req.V = V;
  req.hbar = hbar;
  req.mass = mass;
  req.c = c;
  req.x = 0.0;
  req.t_start = 0.0;
  req.t_end = 1.0;
  req.n_samples = 16;
  const kgt_status rc = guarded(nullptr, [&] { req.validate(); });
  if (rc != KGT_OK) return nullptr;
  return new kgt_solver{req};
}

void kgt_solver_free(kgt_solver* solver) { delete solver; }

kgt_status kgt_solver_set_policy(kgt_solver* solver, double rel_tol, long max_terms,
                                 int consecutive_small, double front_guard) {
  if (!solver) {
    set_error("kgt_solver_set_policy: solver must not be NULL");
    return KGT_ERR_INVALID;
  }
  kgt::SeriesPolicy policy;
  policy.rel_tol = rel_tol;
  policy.max_terms = static_cast<int>(max_terms);
  policy.consecutive_small = consecutive_small;
  policy.front_guard = front_guard;
  return guarded(nullptr, [&] {
    policy.validate();
    solver->request.policy = policy;
  });
}

kgt_status kgt_solver_eval(const kgt_solver* solver, double x, double t, kgt_sample* out,
                           kgt_eval_diag* diag) {
  if (!solver || !out) {
    set_error("kgt_solver_eval: solver and out must not be NULL");
    return KGT_ERR_INVALID;
  }
  return guarded(diag, [&] {
    const kgt::EvolveRequest& req = solver->request;
    switch (req.solver) {
      case kgt::SolverKind::Source: {
        const kgt::PhysicalSetup setup{req.hbar, req.mass, req.c, req.E, req.V};
        const auto s = kgt::psi_source(x, t, setup, req.policy);
        kgt::EvolvePoint p;
        p.psi = s.psi;
        p.dpsi_dt = s.dpsi_dt;
        p.rho = s.rho;
        p.representation = s.representation;
        *out = to_c(p);
        break;
      }
      case kgt::SolverKind::KgShutter: {
        const kgt::ShutterSetup setup{req.hbar, req.mass, req.c, req.E};
        const auto s = kgt::psi_kg_shutter(x, t, setup, req.policy);
        kgt::EvolvePoint p;
        p.psi = s.psi;
        p.dpsi_dt = s.dpsi_dt;
        p.rho = s.rho;
        p.representation = s.representation;
        *out = to_c(p);
        break;
      }
      case kgt::SolverKind::DiracShutter: {
        const kgt::ShutterSetup setup{req.hbar, req.mass, req.c, req.E};
        const auto s = kgt::dirac_shutter(x, t, setup, req.policy);
        kgt::EvolvePoint p;
        p.psi = s.psi1;
        p.psi2 = s.psi2;
        p.rho = s.rho;
        p.representation = kgt::Representation::SeriesA;
        *out = to_c(p);
        break;
      }
      case kgt::SolverKind::Schrodinger: {
        const kgt::PhysicalSetup setup{req.hbar, req.mass, req.c, req.E, req.V};
        kgt::EvolvePoint p;
        p.psi = t > 0.0 ? kgt::psi_schrodinger_step(x, t, setup) : std::complex<double>{};
        p.rho = std::norm(p.psi);
        p.representation = kgt::Representation::SeriesA;
        *out = to_c(p);
        break;
      }
    }
  });
}

kgt_status kgt_solver_eval_grid(const kgt_solver* solver, double x, double t_start, double t_end,
                                long n, kgt_sample* out, kgt_eval_diag* diag) {
  if (!solver || !out) {
    set_error("kgt_solver_eval_grid: solver and out must not be NULL");
    return KGT_ERR_INVALID;
  }
  return guarded(diag, [&] {
    kgt::EvolveRequest req = solver->request;
    req.x = x;
    req.t_start = t_start;
    req.t_end = t_end;
    req.n_samples = static_cast<int>(n);
    const auto points = kgt::evolve_grid(req);
    for (long i = 0; i < n; ++i) out[i] = to_c(points[static_cast<std::size_t>(i)]);
  });
}

kgt_status kgt_longtime_density(const kgt_solver* solver, double x, double t, double* rho_energy,
                                double* rho_mass, double* rho_total) {
  if (!solver || !rho_energy || !rho_mass || !rho_total) {
    set_error("kgt_longtime_density: NULL argument");
    return KGT_ERR_INVALID;
  }
  return guarded(nullptr, [&] {
    kgt::AsymptoticDensity rho;
    const auto& req = solver->request;
    switch (req.solver) {
      case kgt::SolverKind::Source:
        rho = kgt::rho_longtime_source(x, t, {req.hbar, req.mass, req.c, req.E, req.V});
        break;
      case kgt::SolverKind::KgShutter:
        rho = kgt::rho_kg_longtime(x, t, {req.hbar, req.mass, req.c, req.E});
        break;
      case kgt::SolverKind::DiracShutter:
        rho = kgt::rho_dirac_longtime(x, t, {req.hbar, req.mass, req.c, req.E});
        break;
      case kgt::SolverKind::Schrodinger:
        throw std::domain_error("kgt_longtime_density: not defined for the Schrodinger solver");
    }
    *rho_energy = rho.rho_energy;
    *rho_mass = rho.rho_mass;
    *rho_total = rho.rho_total;
  });
}

kgt_status kgt_detect_wavefront(double x, double c, double t0, double dt, const double* rho,
                                long n, double* t_peak) {
  if (!rho || !t_peak || n <= 0) {
    set_error("kgt_detect_wavefront: bad buffer");
    return KGT_ERR_INVALID;
  }
  return guarded(nullptr, [&] {
    const auto series = make_series(x, c, t0, dt, rho, n);
    *t_peak = kgt::detect_main_wavefront(series);
  });
}

kgt_status kgt_measure_delay(double x, double c, double t0, double dt, const double* rho_free,
                             const double* rho_step, long n, double zero_tol,
                             kgt_delay_result* out) {
  if (!rho_free || !rho_step || !out || n <= 0) {
    set_error("kgt_measure_delay: bad buffer");
    return KGT_ERR_INVALID;
  }
  return guarded(nullptr, [&] {
    const auto free_series = make_series(x, c, t0, dt, rho_free, n);
    const auto step_series = make_series(x, c, t0, dt, rho_step, n);
    const auto m = kgt::measure_delay(free_series, step_series, zero_tol);
    out->t_free = m.t_free;
    out->t_step = m.t_step;
    out->delta_t = m.delta_t;
    out->classification = to_c(m.classification);
  });
}

kgt_status kgt_extract_beats(double t0, double dt, const double* rho, long n, double t_min,
                             kgt_beats_result* out) {
  if (!rho || !out || n <= 0) {
    set_error("kgt_extract_beats: bad buffer");
    return KGT_ERR_INVALID;
  }
  return guarded(nullptr, [&] {
    const auto series = make_series(0.0, 1.0, t0, dt, rho, n);
    const auto b = kgt::extract_beats(series, t_min);
    out->omega_est = b.omega_est;
    out->period_est = b.period_est;
    out->decay_exponent = b.decay_exponent;
    out->fit_residual = b.fit_residual;
    out->n_periods_used = b.n_periods_used;
  });
}

kgt_status kgt_moshinsky_m(double x, double q, double t, double beta, double* m_re, double* m_im) {
  if (!m_re || !m_im) {
    set_error("kgt_moshinsky_m: NULL output");
    return KGT_ERR_INVALID;
  }
  return guarded(nullptr, [&] {
    const auto m = kgt::moshinsky_m({x, q, t, beta});
    *m_re = m.real();
    *m_im = m.imag();
  });
}

kgt_status kgt_faddeeva_w(double z_re, double z_im, double* w_re, double* w_im) {
  if (!w_re || !w_im) {
    set_error("kgt_faddeeva_w: NULL output");
    return KGT_ERR_INVALID;
  }
  return guarded(nullptr, [&] {
    const auto w = kgt::faddeeva_w({z_re, z_im});
    *w_re = w.real();
    *w_im = w.imag();
  });
}

kgt_status kgt_bessel_j(double eta, int n_max, double* out) {
  if (!out) {
    set_error("kgt_bessel_j: NULL output");
    return KGT_ERR_INVALID;
  }
  return guarded(nullptr, [&] {
    const auto seq = kgt::bessel_j_sequence(eta, n_max);
    for (int i = 0; i <= n_max; ++i) out[i] = seq.values[static_cast<std::size_t>(i)];
  });
}

double kgt_schrodinger_momentum(double E, double V, double hbar, double mass, double c) {
  double value = -1.0;
  guarded(nullptr,
          [&] { value = kgt::schrodinger_momentum(kgt::PhysicalSetup{hbar, mass, c, E, V}); });
  return value;
}

}  // extern "C"

/* kgtrans: transient relativistic quantum waves for a step potential.
 *
 * C API over the C++ core: opaque solver handles, status codes, plain
 * buffers. All functions are thread-safe; solver handles are immutable after
 * configuration and may be shared across threads.
 */
#ifndef KGTRANS_H
#define KGTRANS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kgt_status {
  KGT_OK = 0,
  KGT_ERR_INVALID = 1,              /* bad argument or configuration */
  KGT_ERR_TRUNCATION = 2,           /* series failed to converge */
  KGT_ERR_NO_PEAK = 3,              /* |rho| monotone over the window */
  KGT_ERR_INSUFFICIENT_PERIODS = 4, /* too few beat periods for a fit */
  KGT_ERR_FLAT_SIGNAL = 5,          /* oscillation below 1e-12 of stationary */
  KGT_ERR_DOMAIN = 6,               /* point/setup outside an op's domain */
  KGT_ERR_INTERNAL = 7
} kgt_status;

typedef enum kgt_regime {
  KGT_REGIME_PROPAGATION = 0,
  KGT_REGIME_EVANESCENT = 1,
  KGT_REGIME_KLEIN = 2,
  KGT_REGIME_BOUNDARY_UPPER = 3,
  KGT_REGIME_BOUNDARY_LOWER = 4
} kgt_regime;

typedef enum kgt_solver_kind {
  KGT_SOLVER_SOURCE = 0,
  KGT_SOLVER_KG_SHUTTER = 1,
  KGT_SOLVER_DIRAC_SHUTTER = 2,
  KGT_SOLVER_SCHRODINGER = 3
} kgt_solver_kind;

typedef enum kgt_delay_class {
  KGT_DELAY = 0,
  KGT_ADVANCE = 1,
  KGT_ZERO = 2,
  KGT_NOT_APPLICABLE = 3
} kgt_delay_class;

typedef enum kgt_representation {
  KGT_REP_SERIES_A = 0,
  KGT_REP_SERIES_B = 1,
  KGT_REP_FRONT = 2,
  KGT_REP_LONGTIME = 3,
  KGT_REP_OUTSIDE_CONE = 4
} kgt_representation;

typedef struct kgt_regime_info {
  int regime; /* kgt_regime */
  double k_re, k_im;
  double z_plus_re, z_plus_im;
  double z_minus_re, z_minus_im;
  double mu;
  double epsilon;
  double omega_zbw;    /* 2 mu c */
  int predicted_delay; /* kgt_delay_class */
} kgt_regime_info;

typedef struct kgt_sample {
  double psi_re, psi_im;
  double psi2_re, psi2_im; /* second spinor component (Dirac), else 0 */
  double dpsi_dt_re, dpsi_dt_im;
  double rho;
  int representation; /* kgt_representation */
} kgt_sample;

typedef struct kgt_eval_diag {
  long fail_index; /* failing grid row, -1 for scalar calls */
  double attained_residual;
  int terms_used;
} kgt_eval_diag;

typedef struct kgt_delay_result {
  double t_free;
  double t_step;
  double delta_t;     /* t_step - t_free: positive = stepped wavefront later */
  int classification; /* kgt_delay_class */
} kgt_delay_result;

typedef struct kgt_beats_result {
  double omega_est;
  double period_est;
  double decay_exponent;
  double fit_residual;
  int n_periods_used;
} kgt_beats_result;

const char* kgt_version(void);
const char* kgt_status_message(kgt_status s);
/* Message of the most recent failing call on the calling thread. */
const char* kgt_last_error(void);

/* Regime classification, z factors and the predicted delay class. */
kgt_status kgt_classify(double E, double V, double hbar, double mass, double c,
                        kgt_regime_info* out);

/* Opaque solver handle. V must be 0 for the shutter kinds. */
typedef struct kgt_solver kgt_solver;
kgt_solver* kgt_solver_new(kgt_solver_kind kind, double E, double V, double hbar, double mass,
                           double c);
void kgt_solver_free(kgt_solver* solver);
kgt_status kgt_solver_set_policy(kgt_solver* solver, double rel_tol, long max_terms,
                                 int consecutive_small, double front_guard);

/* Wave, derivative and density at one point; diag may be NULL. */
kgt_status kgt_solver_eval(const kgt_solver* solver, double x, double t, kgt_sample* out,
                           kgt_eval_diag* diag);

/* Uniform grid t_start..t_end with n samples, written to out[0..n-1].
 * Evaluation is partitioned across threads; results do not depend on the
 * partition. On KGT_ERR_TRUNCATION, diag (when non-NULL) reports the first
 * failing row. */
kgt_status kgt_solver_eval_grid(const kgt_solver* solver, double x, double t_start, double t_end,
                                long n, kgt_sample* out, kgt_eval_diag* diag);

/* Long-time density split (rho_energy, rho_mass, rho_total) of the solver's
 * density; defined for source (real-momentum regimes) and both shutters. */
kgt_status kgt_longtime_density(const kgt_solver* solver, double x, double t, double* rho_energy,
                                double* rho_mass, double* rho_total);

/* Signal analysis over rho sampled on the uniform grid t0 + dt * i. */
kgt_status kgt_detect_wavefront(double x, double c, double t0, double dt, const double* rho,
                                long n, double* t_peak);
kgt_status kgt_measure_delay(double x, double c, double t0, double dt, const double* rho_free,
                             const double* rho_step, long n, double zero_tol,
                             kgt_delay_result* out);
kgt_status kgt_extract_beats(double t0, double dt, const double* rho, long n, double t_min,
                             kgt_beats_result* out);

/* Transient kernel of the free Schrodinger equation; beta = 2 m / hbar. */
kgt_status kgt_moshinsky_m(double x, double q, double t, double beta, double* m_re, double* m_im);

/* Faddeeva function w(z) = exp(-z^2) erfc(-iz). */
kgt_status kgt_faddeeva_w(double z_re, double z_im, double* w_re, double* w_im);

/* J_0..J_n_max(eta) into out[0..n_max]. */
kgt_status kgt_bessel_j(double eta, int n_max, double* out);

/* Momentum of the kinetic-energy-matched non-relativistic run,
 * sqrt(2 mu (eps - mu)); negative return value signals an error. */
double kgt_schrodinger_momentum(double E, double V, double hbar, double mass, double c);

#ifdef __cplusplus
}
#endif

#endif /* KGTRANS_H */

/* swingroa — transient-stability toolkit for second-order Kuramoto networks.
 *
 * C interface to the analysis core: system construction, the region-of-
 * attraction certificate, fixed-step RK4 simulation with inequality monitors,
 * and grid scans over initial phases.
 *
 * Conventions:
 *   - Every fallible function returns swing_status; SWING_OK means success.
 *   - On failure, swing_last_error() returns a thread-local message describing
 *     the most recent failing call on this thread.
 *   - Objects returned through swing_*** out-parameters are owned by the
 *     caller and released with the matching swing_*_free function.
 *   - Strings returned through char** out-parameters are NUL-terminated and
 *     released with swing_string_free.
 *   - All numeric text emitted by the to_json/to_csv functions carries 17
 *     significant digits, so equal text means equal bits.
 */

#ifndef SWINGROA_H
#define SWINGROA_H

#include <stddef.h>

#if defined(_WIN32)
#define SWINGROA_API __declspec(dllexport)
#else
#define SWINGROA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swing_status {
    SWING_OK = 0,
    SWING_ERR_INVALID_ARGUMENT = 1, /* null pointers, bad sizes, bad flags   */
    SWING_ERR_PARSE = 2,            /* malformed input text                  */
    SWING_ERR_DOMAIN = 3,           /* input outside an operation's domain   */
    SWING_ERR_NUMERIC = 4,          /* runtime numerical failure (blow-up)   */
    SWING_ERR_INTERNAL = 5
} swing_status;

SWINGROA_API const char* swing_status_name(swing_status status);

/* Message for the most recent failing call on this thread ("" if none). */
SWINGROA_API const char* swing_last_error(void);

SWINGROA_API void swing_string_free(char* text);

/* ------------------------------------------------------------------ system */

typedef struct swing_system swing_system;

/* coupling is row-major n*n, symmetric, zero diagonal, entries >= 0. */
SWINGROA_API swing_status swing_system_create(int n, const double* m,
                                              const double* d, const double* omega,
                                              const double* coupling,
                                              swing_system** out);

/* JSON document: {"n", "m", "d", "omega", "coupling"} with optional
 * {"seed", "random"} provenance, or the generative form {"n", "seed",
 * "random": {"m_range", "d_range", "coupling_value"}}. */
SWINGROA_API swing_status swing_system_from_json(const char* text,
                                                 swing_system** out);

/* Seeded random instance: m_i, d_i uniform in the given ranges, all-to-all
 * coupling, zero-mean natural frequencies scaled for a comfortably certified
 * origin (the scale is recorded in the JSON provenance). */
SWINGROA_API swing_status swing_system_generate(int n, unsigned long long seed,
                                                double m_lo, double m_hi,
                                                double d_lo, double d_hi,
                                                double coupling,
                                                swing_system** out);

SWINGROA_API void swing_system_free(swing_system* s);

SWINGROA_API int swing_system_size(const swing_system* s);

SWINGROA_API swing_status swing_system_to_json(const swing_system* s, char** out);

/* Stationary-phase initial frequencies for the given phases:
 * omega_i = (Omega_i + sum_j a_ij sin(theta_j - theta_i)) / d_i.
 * theta points at n values; omega_out receives n values. */
SWINGROA_API swing_status swing_derive_frequencies(const swing_system* s,
                                                   const double* theta,
                                                   double* omega_out);

/* ------------------------------------------------------------- certificate */

/* Flat mirror of the certificate verdict. Quantities that were never reached
 * (e.g. constants when H2 already failed) are NaN. The verdict logic:
 * certified = h1_pass && h2_pass && eps_admissible && h3_pass, all strict
 * inequalities; margin = rhs_h3 - lhs_h3 carries the signed distance. */
typedef struct swing_certificate {
    int n;
    double d0;
    double r0;     /* sin(d0)/d0 */
    double lambda; /* parameter-fluctuation constant */

    int h1_pass; /* coupling graph connected */
    int h2_pass; /* parametric condition */
    int h3_pass; /* initial-data condition */
    int certified;

    double h2_lhs, h2_rhs;
    double eps_lo, eps_hi; /* admissible open interval */
    double eps;            /* value used (auto resolved) */
    int eps_is_auto;
    int eps_admissible;

    double c0, c1, c_ell, c_ell_tilde;

    double omega_c;        /* collective drift removed before evaluation */
    double omega_hat_norm; /* Euclidean norm of reduced natural frequencies */

    double e_tilde_0; /* initial energy of the reduced state */
    double lhs_h3, rhs_h3, margin;
} swing_certificate;

/* theta0/omega0 point at n values; omega0 == NULL means all zeros.
 * eps == NULL selects the auto policy (just above the interval's lower end). */
SWINGROA_API swing_status swing_certify(const swing_system* s, const double* theta0,
                                        const double* omega0, double d0,
                                        const double* eps, swing_certificate* out);

SWINGROA_API swing_status swing_certificate_to_json(const swing_certificate* c,
                                                    char** out);

/* --------------------------------------------------------------- dynamics */

typedef struct swing_sim_options {
    double dt;         /* integration step (default 1e-3)                  */
    double horizon;    /* end time (default 200)                           */
    double energy_eps; /* eps for the Et monitor channel (default 1.0)     */
} swing_sim_options;

SWINGROA_API void swing_sim_options_default(swing_sim_options* opt);

typedef struct swing_trajectory swing_trajectory;

/* Classical fixed-step RK4 with per-step monitors. Fails with
 * SWING_ERR_NUMERIC ("blow-up detected at t=...") if the state leaves the
 * representable range — a sign that dt is too large for the parameters. */
SWINGROA_API swing_status swing_simulate(const swing_system* s, const double* theta0,
                                         const double* omega0,
                                         const swing_sim_options* opt,
                                         swing_trajectory** out);

SWINGROA_API void swing_trajectory_free(swing_trajectory* tr);

/* Number of stored samples (steps + 1; sample k is time k*dt). */
SWINGROA_API long long swing_trajectory_samples(const swing_trajectory* tr);

/* Copy sample k: t (1 value), theta (n), omega (n). Any out pointer may be
 * NULL to skip that field. */
SWINGROA_API swing_status swing_trajectory_sample(const swing_trajectory* tr,
                                                  long long k, double* t,
                                                  double* theta, double* omega);

/* Monitor channels at sample k, in order:
 * diam, spread, etilde, diss, conserved (out points at 5 values). */
SWINGROA_API swing_status swing_trajectory_monitors(const swing_trajectory* tr,
                                                    long long k, double* out);

/* max_t |theta_s + omega_s - initial value| over the whole trajectory. */
SWINGROA_API double swing_trajectory_conservation_drift(const swing_trajectory* tr);

/* max over samples and oscillators of |omega_i(t)| minus its a-priori bound
 * (negative when the bound holds everywhere, as it should). */
SWINGROA_API double swing_trajectory_bound_excess(const swing_trajectory* tr);

/* CSV with header t,theta_1..theta_n,omega_1..omega_n,diam,spread,etilde,diss,
 * conserved; every stride-th sample plus the final one. */
SWINGROA_API swing_status swing_trajectory_to_csv(const swing_trajectory* tr,
                                                  int stride, char** out);

typedef struct swing_sync_report {
    int synced;
    int has_t_sync;
    double t_sync; /* first time after which the spread stays below tol */
    int has_rate;
    double rate; /* log-spread decay slope over the post-transient window */
    int has_r_squared;
    double r_squared;
} swing_sync_report;

SWINGROA_API swing_status swing_detect_sync(const swing_trajectory* tr, double tol,
                                            swing_sync_report* out);

/* Serialize a report produced by swing_detect_sync. The struct carries only
 * the scalar fields, so "final_phase_gaps" is emitted empty here; use
 * swing_detect_sync_json for the complete document. */
SWINGROA_API swing_status swing_sync_report_to_json(const swing_sync_report* rep,
                                                    char** out);

/* Run detection and emit the full JSON report in one step, including the
 * n-by-n matrix of final phase gaps theta_i - theta_j. */
SWINGROA_API swing_status swing_detect_sync_json(const swing_trajectory* tr,
                                                 double tol, char** out);

/* ------------------------------------------------------------------- scans */

#define SWING_SCAN_CERTIFIED 1
#define SWING_SCAN_SIMULATED 2
#define SWING_SCAN_BOTH 3

typedef struct swing_scan_options {
    double theta1_lo, theta1_hi; /* default [0, pi] */
    double theta2_lo, theta2_hi; /* default [0, pi] */
    int resolution;              /* cells per axis, sampled at centers (100) */
    const double* d0_list;       /* each in (0, pi); required, >= 1 entry */
    int d0_count;
    const double* eps_list; /* NULL/0 selects the auto policy per d0 */
    int eps_count;
    int mode;        /* SWING_SCAN_* (default BOTH) */
    double dt;       /* simulation step (1e-3) */
    double horizon;  /* simulation end time (200) */
    double sync_tol; /* sustained-spread threshold (1e-6) */
    int threads;     /* 0 => SWING_ROA_THREADS env var, else hardware */
    unsigned long long seed; /* provenance echoed into metadata */
} swing_scan_options;

SWINGROA_API void swing_scan_options_default(swing_scan_options* opt);

typedef struct swing_scan_result swing_scan_result;

SWINGROA_API swing_status swing_scan(const swing_system* s,
                                     const swing_scan_options* opt,
                                     swing_scan_result** out);

SWINGROA_API void swing_scan_free(swing_scan_result* r);

/* Certified-but-not-synced cell count; -1 when the scan ran without
 * simulation. Any positive value disproves the certificate's soundness. */
SWINGROA_API long long swing_scan_soundness_violations(const swing_scan_result* r);

SWINGROA_API swing_status swing_scan_to_csv(const swing_scan_result* r, char** out);
SWINGROA_API swing_status swing_scan_metadata_json(const swing_scan_result* r,
                                                   char** out);
SWINGROA_API swing_status swing_scan_stats_json(const swing_scan_result* r,
                                                char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SWINGROA_H */

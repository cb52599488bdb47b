/* C interface to the cointoss library: free rotation of a coin with
 * triaxial inertia and the limiting probability of heads.
 *
 * Every fallible call returns a ct_status. On failure the message is
 * available from ct_last_error_message() on the same thread until the next
 * failing call. Angles are radians, inertia g*cm^2, |L| g*cm^2/s, time s.
 */
#ifndef COINTOSS_COINTOSS_H
#define COINTOSS_COINTOSS_H

#include <stddef.h>
#include <stdint.h>
#include <stdio.h>

#if defined(COINTOSS_BUILDING_LIBRARY)
#define COINTOSS_API __attribute__((visibility("default")))
#else
#define COINTOSS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ct_status {
  CT_OK = 0,
  CT_INVALID_INPUT = 1,
  CT_DEGENERATE_INPUT = 2,
  CT_UNSUPPORTED_CASE = 3,
  CT_INTEGRATION_FAILURE = 4,
  CT_IO_ERROR = 5,
  CT_INTERNAL_ERROR = 6
} ct_status;

COINTOSS_API const char* ct_status_name(ct_status status);
COINTOSS_API const char* ct_last_error_message(void);
COINTOSS_API const char* ct_version(void);
COINTOSS_API const char* ct_rng_algorithm(void);

typedef struct ct_inertia {
  double ix, iy, iz;
} ct_inertia;

typedef struct ct_initial_conditions {
  double l_mag;
  double alpha, beta;          /* direction of L in the reference frame */
  double phi0, theta0, psi0;   /* initial Euler angles */
} ct_initial_conditions;

typedef enum ct_envelope_case {
  CT_ENVELOPE_SUPPLEMENTARY = 0,
  CT_ENVELOPE_BOTH_ACUTE = 1,
  CT_ENVELOPE_BOTH_OBTUSE = 2,
  CT_ENVELOPE_UNIFORM_DEGENERATE = 3
} ct_envelope_case;

typedef struct ct_envelope {
  double c1, c2;
  double theta_m, theta_M;
  ct_envelope_case case_tag;
} ct_envelope;

typedef struct ct_quartic {
  double a0, A, B, C;
} ct_quartic;

typedef struct ct_arcsine {
  double k1, k2, lo, hi;
} ct_arcsine;

/* Long-time law of the nutation angle used by the probability quadrature. */
typedef enum ct_theta_law {
  CT_THETA_LAW_DWELL = 0,   /* time spent per unit angle along the orbit */
  CT_THETA_LAW_ARCSINE = 1  /* csc^2(theta) ~ Arcsine(lo, hi) */
} ct_theta_law;

typedef enum ct_method {
  CT_METHOD_QUADRATURE = 0,
  CT_METHOD_CLOSED_FORM_UNIFORM = 1,
  CT_METHOD_FAIR_SYMMETRY = 2
} ct_method;

typedef struct ct_probability {
  double p;
  double abs_error_estimate;
  ct_method method;
} ct_probability;

typedef struct ct_toss_state {
  double t, phi, theta, psi;
  double lx, ly, lz;
} ct_toss_state;

typedef struct ct_magnitude_density {
  double mean, stddev;  /* Gaussian truncated to (0, inf); mean > 4 stddev */
} ct_magnitude_density;

typedef struct ct_mc_estimate {
  double p_hat;
  double std_error;
  uint64_t n;
  double t_eval;
  uint64_t seed;
} ct_mc_estimate;

typedef struct ct_equidistribution_options {
  int bins;                     /* per axis of the joint (psi, phi) grid */
  double ks_threshold;
  double chi2_pvalue_threshold;
} ct_equidistribution_options;

typedef struct ct_equidistribution_report {
  ct_mc_estimate heads;
  int skipped; /* 1 for an axisymmetric coin or a fixed point */
  double ks_psi, ks_phi;
  double chi2;
  int chi2_dof;
  double chi2_pvalue;
  int has_ks_arcsine;
  double ks_arcsine;
  int has_ks_theta_dwell;
  double ks_theta_dwell;
  ct_equidistribution_options options;
} ct_equidistribution_report;

COINTOSS_API const char* ct_envelope_case_name(ct_envelope_case c);
COINTOSS_API const char* ct_method_name(ct_method m);
COINTOSS_API const char* ct_theta_law_name(ct_theta_law law);
COINTOSS_API ct_status ct_parse_theta_law(const char* name, ct_theta_law* out);

COINTOSS_API ct_inertia ct_half_dollar_inertia(void);
COINTOSS_API ct_status ct_validate_inertia(const ct_inertia* inertia);
COINTOSS_API ct_status ct_validate_initial_conditions(const ct_initial_conditions* init);
COINTOSS_API ct_equidistribution_options ct_default_equidistribution_options(void);

/* geometry */
COINTOSS_API ct_status ct_normal_in_reference(double alpha, double beta, double phi, double theta,
                                              double psi, double out_xyz[3]);
COINTOSS_API ct_status ct_heads_indicator(double alpha, double beta, double theta, double psi,
                                          int* out);

/* analysis */
COINTOSS_API ct_status ct_nutation_bounds(const ct_inertia* inertia, double phi0, double theta0,
                                          ct_envelope* out);
COINTOSS_API ct_status ct_in_fair_region(const ct_inertia* inertia, double phi0, double theta0,
                                         int* out);
COINTOSS_API ct_status ct_quartic_coefficients(const ct_inertia* inertia, double phi0,
                                               double theta0, ct_quartic* out);
COINTOSS_API ct_status ct_arcsine_params(const ct_inertia* inertia, double phi0, double theta0,
                                         ct_arcsine* out);
COINTOSS_API ct_status ct_winding_integral(const ct_inertia* inertia, double phi0, double theta0,
                                           int m1, int m2, double* out);
COINTOSS_API ct_status ct_period_lz(const ct_inertia* inertia, const ct_initial_conditions* init,
                                    double* out);

/* Density of theta for an envelope. Zero-width envelopes are a point mass:
 * the cdf is a unit step there and the pdf fails with CT_DEGENERATE_INPUT. */
typedef struct ct_theta_density ct_theta_density;
COINTOSS_API ct_status ct_theta_density_create(const ct_envelope* bounds, ct_theta_law law,
                                               ct_theta_density** out);
COINTOSS_API void ct_theta_density_free(ct_theta_density* density);
COINTOSS_API int ct_theta_density_is_point_mass(const ct_theta_density* density);
COINTOSS_API double ct_theta_density_point_mass_location(const ct_theta_density* density);
COINTOSS_API ct_status ct_theta_density_pdf(const ct_theta_density* density, double theta,
                                            double* out);
COINTOSS_API ct_status ct_theta_density_cdf(const ct_theta_density* density, double theta,
                                            double* out);

/* dynamics */
typedef struct ct_trajectory ct_trajectory;
COINTOSS_API ct_status ct_simulate(const ct_inertia* inertia, const ct_initial_conditions* init,
                                   double t_end, double dt, ct_trajectory** out);
COINTOSS_API void ct_trajectory_free(ct_trajectory* trajectory);
COINTOSS_API size_t ct_trajectory_size(const ct_trajectory* trajectory);
COINTOSS_API ct_status ct_trajectory_sample(const ct_trajectory* trajectory, size_t index,
                                            ct_toss_state* out);
/* Header t,phi,theta,psi,lx,ly,lz,nz,heads; 17 significant digits. */
COINTOSS_API ct_status ct_trajectory_write_csv(const ct_trajectory* trajectory, FILE* stream);

/* probability */
COINTOSS_API ct_status ct_heads_probability(const ct_inertia* inertia, double beta, double phi0,
                                            double theta0, ct_theta_law law,
                                            ct_probability* out);
COINTOSS_API ct_status ct_heads_probability_straight(const ct_inertia* inertia, double phi0,
                                                     double theta0, ct_theta_law law,
                                                     ct_probability* out);

typedef struct ct_theta0_samples ct_theta0_samples;
COINTOSS_API ct_status ct_theta0_samples_create(ct_theta0_samples** out);
/* CSV with header theta0_radians[,weight]; errors name the line. */
COINTOSS_API ct_status ct_theta0_samples_load_csv(const char* path, ct_theta0_samples** out);
COINTOSS_API void ct_theta0_samples_free(ct_theta0_samples* samples);
COINTOSS_API ct_status ct_theta0_samples_add(ct_theta0_samples* samples, double theta0,
                                             double weight);
COINTOSS_API size_t ct_theta0_samples_size(const ct_theta0_samples* samples);
COINTOSS_API ct_status ct_aggregate_probability(const ct_inertia* inertia,
                                                const ct_theta0_samples* samples,
                                                size_t phi0_grid_size, ct_theta_law law,
                                                ct_probability* out);

/* fair-region grid, header phi0,theta0,fair */
COINTOSS_API ct_status ct_fair_region_write_csv(const ct_inertia* inertia, int n_phi, int n_theta,
                                                FILE* stream);

/* Monte Carlo. init->l_mag is ignored; |L| is drawn from the density. */
COINTOSS_API ct_status ct_sample_magnitude(const ct_magnitude_density* density, uint64_t seed,
                                           size_t n, double* out);
COINTOSS_API ct_status ct_estimate_heads(const ct_inertia* inertia,
                                         const ct_initial_conditions* init,
                                         const ct_magnitude_density* density, size_t n,
                                         double t_eval, uint64_t seed, ct_mc_estimate* out);
/* One estimate per time in t_evals (ascending), all from the same draws. */
COINTOSS_API ct_status ct_estimate_heads_at(const ct_inertia* inertia,
                                            const ct_initial_conditions* init,
                                            const ct_magnitude_density* density, size_t n,
                                            const double* t_evals, size_t count, uint64_t seed,
                                            ct_mc_estimate* out);
COINTOSS_API ct_status ct_equidistribution_test(const ct_inertia* inertia,
                                                const ct_initial_conditions* init,
                                                const ct_magnitude_density* density, size_t n,
                                                double t_eval, uint64_t seed,
                                                const ct_equidistribution_options* options,
                                                ct_equidistribution_report* out);

#ifdef __cplusplus
}
#endif

#endif /* COINTOSS_COINTOSS_H */

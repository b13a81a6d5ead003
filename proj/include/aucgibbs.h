/* aucgibbs: model-free posterior inference for the AUC behind a C ABI.
 *
 * Every fallible call returns an agp_status; on failure the out-arguments
 * are untouched and agp_last_error() holds a thread-local message. Handles
 * are created by agp_*_create/from_* calls and released with the matching
 * free function; passing NULL to a free function is a no-op.
 */
#ifndef AUCGIBBS_H
#define AUCGIBBS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum agp_status {
    AGP_OK = 0,
    AGP_ERR_INVALID = 1,    /* bad argument or configuration */
    AGP_ERR_TIES = 2,       /* tied scores where distinct ones are required */
    AGP_ERR_DEGENERATE = 3, /* interval too extreme for the floating grid */
    AGP_ERR_VARIANCE = 4,   /* nonpositive plug-in variance estimate */
    AGP_ERR_IO = 5,         /* file open/read/write failure */
    AGP_ERR_INTERNAL = 6    /* unexpected condition */
} agp_status;

/* Static description of a status code. */
const char* agp_strerror(agp_status status);

/* Thread-local message from the most recent failing call ("" initially). */
const char* agp_last_error(void);

const char* agp_version(void);

/* ------------------------------------------------------------------ */
/* Score data                                                          */
/* ------------------------------------------------------------------ */

typedef struct agp_scores agp_scores;

/* group1 holds the m scores of the positive class, group0 the n scores of
 * the negative class; both groups need at least two finite values. */
agp_status agp_scores_create(const double* group1, size_t m, const double* group0,
                             size_t n, agp_scores** out);

/* Parse "score,group" CSV (group 0/1, header required) from a file or a
 * NUL-terminated buffer. */
agp_status agp_scores_from_csv(const char* path, agp_scores** out);
agp_status agp_scores_from_csv_text(const char* text, agp_scores** out);

void agp_scores_free(agp_scores* scores);

size_t agp_scores_m(const agp_scores* scores);
size_t agp_scores_n(const agp_scores* scores);

/* Mann-Whitney point estimate of the AUC. */
agp_status agp_mann_whitney(const agp_scores* scores, double* out);

/* Variance-matching learning rate 1/(2 m n V); AGP_ERR_VARIANCE when the
 * plug-in variance estimate is nonpositive. */
agp_status agp_analytic_rate(const agp_scores* scores, double* out);

/* ------------------------------------------------------------------ */
/* Gibbs posterior fit                                                 */
/* ------------------------------------------------------------------ */

typedef enum agp_omega_mode {
    AGP_OMEGA_FIXED = 0,     /* use agp_fit_config.omega as given */
    AGP_OMEGA_ANALYTIC = 1,  /* variance-matching closed form */
    AGP_OMEGA_CALIBRATE = 2  /* bootstrap coverage calibration */
} agp_omega_mode;

typedef struct agp_fit_config {
    int omega_mode;             /* one of agp_omega_mode */
    double omega;               /* rate when AGP_OMEGA_FIXED; must be > 0 */
    double alpha;               /* credible level is 1 - alpha */
    double prior_location;      /* truncated-normal prior on [0,1] ...    */
    double prior_scale;         /* ... used when prior_scale > 0, else flat */
    uint64_t seed;              /* bootstrap stream seed */
    int64_t bootstrap_samples;  /* calibration resamples */
    int64_t max_iterations;     /* calibration iteration cap */
    double epsilon;             /* calibration stopping tolerance */
    double kappa_exponent;      /* step-size decay, in (0.5, 1] */
} agp_fit_config;

/* Defaults: calibrate, alpha 0.05, flat prior, seed 0, 1000 resamples,
 * 1000 iterations, epsilon 0.01, kappa_exponent 0.51. */
void agp_fit_config_init(agp_fit_config* cfg);

typedef struct agp_fit_result {
    double theta_hat;      /* Mann-Whitney estimate */
    double posterior_mean;
    double posterior_sd;
    double ci_lower;       /* highest-density interval */
    double ci_upper;
    double omega;          /* learning rate actually used */
    int calibrated;        /* 1 when omega came from the bootstrap loop */
    int converged;         /* calibration convergence (1 for other modes) */
} agp_fit_result;

agp_status agp_fit(const agp_scores* scores, const agp_fit_config* cfg,
                   agp_fit_result* out);

typedef struct agp_calibration_result {
    double omega_hat;
    int converged;
    int64_t iterations;     /* coverage evaluations performed */
    double final_coverage;  /* NaN when iterations == 0 */
} agp_calibration_result;

/* Bootstrap calibration alone; omega_mode/omega in cfg are ignored. */
agp_status agp_calibrate(const agp_scores* scores, const agp_fit_config* cfg,
                         agp_calibration_result* out);

/* Full iterate trace of the same run: up to `capacity` rows of
 * (omega, coverage, delta) in iteration order; *count receives the number
 * written. Any output pointer may be NULL to skip that column. */
agp_status agp_calibrate_iterates(const agp_scores* scores, const agp_fit_config* cfg,
                                  size_t capacity, double* omegas, double* coverages,
                                  double* deltas, size_t* count);

/* ------------------------------------------------------------------ */
/* Rank-likelihood baseline                                            */
/* ------------------------------------------------------------------ */

typedef struct agp_brl_config {
    int64_t n_samples;  /* total Gibbs sweeps */
    int64_t burn_in;    /* sweeps discarded from the front */
    int64_t thin;       /* keep every thin-th sweep after burn-in */
    double alpha;       /* equal-tailed credible level is 1 - alpha */
    uint64_t seed;
    int check_ranks;    /* re-verify the rank invariant each sweep */
    int custom_init;    /* start the chain at (a0, b20) instead of the
                           normal-scores moments */
    double a0;
    double b20;
} agp_brl_config;

/* Defaults: 50000 sweeps, 10000 burn-in, thin 1, alpha 0.05, seed 0,
 * automatic initialization. */
void agp_brl_config_init(agp_brl_config* cfg);

typedef struct agp_brl_result {
    double posterior_mean;
    double posterior_sd;
    double ci_lower;  /* equal-tailed sample quantiles */
    double ci_upper;
    int64_t kept_draws;
} agp_brl_result;

agp_status agp_brl_fit(const agp_scores* scores, const agp_brl_config* cfg,
                       agp_brl_result* out);

/* ------------------------------------------------------------------ */
/* Simulation harness                                                  */
/* ------------------------------------------------------------------ */

/* Scenario ids: 1 binormal, 2 skew-normal, 3 normal mixture,
 * 4 shifted exponential; group 0 is always standard normal. */
agp_status agp_true_auc(int scenario, double* out);

typedef enum agp_method { AGP_METHOD_GIBBS = 0, AGP_METHOD_BRL = 1 } agp_method;

typedef struct agp_study_row {
    int scenario;
    int64_t n;  /* group size, m = n */
    int method;
    double bias;
    double avg_posterior_sd;
    double mean_ci_length;
    double coverage;
    int64_t replications;
    uint64_t seed;
} agp_study_row;

/* One row per n_grid entry, written to rows[0..n_count). The Gibbs arm
 * calibrates per replication with fit_cfg's bootstrap settings; the BRL
 * arm uses brl_cfg's chain settings. alpha of fit_cfg governs intervals
 * for both arms. */
agp_status agp_run_study(int scenario, const int64_t* n_grid, size_t n_count,
                         int method, int64_t replications,
                         const agp_fit_config* fit_cfg, const agp_brl_config* brl_cfg,
                         agp_study_row* rows);

/* Calibrated rates on fresh simulated datasets plus a Monte Carlo oracle
 * rate per n. omega_hats is row-major with `replications` entries per
 * n_grid element; omega_oracles has n_count entries. */
agp_status agp_omega_study(int scenario, const int64_t* n_grid, size_t n_count,
                           int64_t replications, const agp_fit_config* fit_cfg,
                           int64_t oracle_mc_reps, double* omega_hats,
                           double* omega_oracles);

#ifdef __cplusplus
}
#endif

#endif /* AUCGIBBS_H */

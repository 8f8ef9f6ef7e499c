#ifndef RFUOWC_H
#define RFUOWC_H

#include <stddef.h>
#include <stdint.h>

#if defined(RFUOWC_BUILDING_LIBRARY)
#define RFUOWC_API __attribute__((visibility("default")))
#else
#define RFUOWC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rfuowc_status {
    RFUOWC_OK = 0,
    RFUOWC_ERR_CONFIG = 1,
    RFUOWC_ERR_DOMAIN = 2,
    RFUOWC_ERR_NONCONVERGENCE = 3,
    RFUOWC_ERR_DEGENERATE = 4,
    RFUOWC_ERR_CONTOUR = 5,
    RFUOWC_ERR_CAPABILITY = 6,
    RFUOWC_ERR_NUMERICAL = 7,
    RFUOWC_ERR_ARGUMENT = 8,
    RFUOWC_ERR_INTERNAL = 9
} rfuowc_status;

typedef enum rfuowc_method {
    RFUOWC_CLOSED_FORM = 0,
    RFUOWC_QUADRATURE = 1,
    RFUOWC_MONTE_CARLO = 2
} rfuowc_method;

typedef struct rfuowc_system rfuowc_system;

typedef struct rfuowc_rf_params {
    double p1;        /* W */
    double sigma1_sq; /* W */
    double g0;
    double radius_r; /* m */
    double height_l; /* m */
    int n_relays;
} rfuowc_rf_params;

typedef struct rfuowc_uowc_params {
    double eta;
    double p2; /* W */
    double n0; /* W/Hz */
    double pr; /* W */
    double bandwidth;
} rfuowc_uowc_params;

typedef struct rfuowc_egg_params {
    double w, lambda, a, b, c;
} rfuowc_egg_params;

typedef struct rfuowc_pointing_params {
    double a0, xi;
} rfuowc_pointing_params;

typedef struct rfuowc_budget {
    double g1, mu1, c_const, g_relay_sq, mean_i, mean_i2, mu2, avg_snr2, rho;
} rfuowc_budget;

typedef struct rfuowc_outage_result {
    double value;
    double err_est; /* standard error for Monte Carlo */
    double c_used;
    int clamped;
} rfuowc_outage_result;

typedef struct rfuowc_eval_options {
    int floor_c;           /* quadrature and Monte Carlo: use floor(c) */
    uint64_t mc_samples;   /* 0 selects 100000 */
    uint64_t seed;
    unsigned workers;      /* 0 selects hardware concurrency */
} rfuowc_eval_options;

/* gain_literal: read the relay gain expression as G instead of G^2.
   rho_is_mu2: take rho = mu2 instead of avg_snr2 / E[I]^2. */
typedef struct rfuowc_model_options {
    int gain_literal;
    int rho_is_mu2;
} rfuowc_model_options;

/* details holds the failed checks and report lines, one per line. */
typedef void (*rfuowc_validate_cb)(int group, const char* name, int passed, const char* summary, const char* details,
                                   void* user);

RFUOWC_API const char* rfuowc_version(void);
RFUOWC_API const char* rfuowc_status_string(rfuowc_status s);
/* Message of the last failing call on this thread; "" if none. */
RFUOWC_API const char* rfuowc_last_error(void);

RFUOWC_API void rfuowc_default_rf(rfuowc_rf_params* out);
RFUOWC_API void rfuowc_default_uowc(rfuowc_uowc_params* out);

RFUOWC_API size_t rfuowc_preset_count(void);
/* key is e.g. "salty/16.5". */
RFUOWC_API rfuowc_status rfuowc_preset(const char* key, rfuowc_egg_params* out);
RFUOWC_API const char* rfuowc_preset_key(size_t index);

/* model may be NULL for the defaults. */
RFUOWC_API rfuowc_status rfuowc_system_create_physical(const rfuowc_rf_params* rf, const rfuowc_uowc_params* uowc,
                                                       const rfuowc_egg_params* egg,
                                                       const rfuowc_pointing_params* pointing,
                                                       const rfuowc_model_options* model, rfuowc_system** out);
RFUOWC_API rfuowc_status rfuowc_system_create_direct(double mu1, double mu2, int n_relays,
                                                     const rfuowc_egg_params* egg,
                                                     const rfuowc_pointing_params* pointing,
                                                     const rfuowc_model_options* model, rfuowc_system** out);
RFUOWC_API void rfuowc_system_destroy(rfuowc_system* sys);

RFUOWC_API rfuowc_status rfuowc_system_budget(const rfuowc_system* sys, rfuowc_budget* out);

/* opts may be NULL. */
RFUOWC_API rfuowc_status rfuowc_outage(const rfuowc_system* sys, rfuowc_method method, double gamma_th,
                                       const rfuowc_eval_options* opts, rfuowc_outage_result* out);
RFUOWC_API rfuowc_status rfuowc_flooring_gap(const rfuowc_system* sys, double gamma_th, double* out);

RFUOWC_API rfuowc_status rfuowc_meijer_g(int m, int n, const double* a, int p, const double* b, int q, double z,
                                         double* out);

/* level: 0 fast, 1 full. mc_samples 0 selects the level default. Writes the
   number of failed groups to failed. */
RFUOWC_API rfuowc_status rfuowc_validate(int level, uint64_t mc_samples, uint64_t seed, rfuowc_validate_cb cb,
                                         void* user, int* failed);

#ifdef __cplusplus
}
#endif

#endif

/* qba.h - C interface to the hybrid spin-optomechanics noise-spectrum model.
 *
 * All functions return qba_status unless noted. On any failure a thread-local
 * message is available via qba_last_error(). Handles are opaque; every
 * *_create / *_compute result must be released with the matching *_free.
 *
 * External units: frequencies in Hz, temperatures in K, angles in rad.
 */
#ifndef QBA_H
#define QBA_H

#include <stddef.h>

#if defined(_WIN32)
#define QBA_API __declspec(dllexport)
#else
#define QBA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qba_status {
    QBA_OK = 0,
    QBA_ERR_ARGUMENT = 1,    /* invalid argument or malformed input */
    QBA_ERR_DOMAIN = 2,      /* evaluated outside the model's domain */
    QBA_ERR_INSTABILITY = 3, /* no stable steady state */
    QBA_ERR_CALIBRATION = 4, /* calibration algebra out of range */
    QBA_ERR_FIT = 5,         /* fit failed to bracket or converge */
    QBA_ERR_KEY = 6,         /* unknown parameter key or value */
    QBA_ERR_INTERNAL = 7
} qba_status;

typedef struct qba_params qba_params;
typedef struct qba_spectrum qba_spectrum;

/* ---- parameters ------------------------------------------------------- */

/* name: "fig23" or "fig4". Returns NULL on unknown name. */
QBA_API qba_params* qba_params_preset(const char* name);
QBA_API void qba_params_free(qba_params* p);

/* Numeric keys (all doubles):
 *   omega_m_hz gamma_m0_hz n_bath t_bath_k m_eff_kg x_zpf_m
 *   kappa1_hz kappa2_hz delta_hz g0_hz n_photons eta_mm
 *   omega_s_hz gamma_s_hz gamma_s0_hz gamma_readout_s_hz n_spin
 *   eta1 eta2 phi_interstage_rad detection_angle_rad n_wn
 *   quadrature_angle_rad
 * Setting t_bath_k recomputes n_bath (and vice versa). Setting
 * detection_angle_rad to NaN clears the override. */
QBA_API qba_status qba_params_set(qba_params* p, const char* key, double value);
QBA_API qba_status qba_params_get(const qba_params* p, const char* key, double* out);

/* String keys:
 *   scenario   = mech-only | spin-only | hybrid-negative | hybrid-positive
 *   quadrature = amplitude | phase | angle
 *   model      = full | broadband | nsb */
QBA_API qba_status qba_params_set_string(qba_params* p, const char* key, const char* value);
QBA_API qba_status qba_params_get_string(const qba_params* p, const char* key, const char** out);

/* Iterate the numeric key schema (for diagnostics / the presets listing). */
QBA_API int qba_params_key_count(void);
QBA_API const char* qba_params_key_name(int index);

/* ---- spectra ---------------------------------------------------------- */

QBA_API qba_status qba_spectrum_compute(const qba_params* p, double f_start_hz, double f_stop_hz,
                                        int n_points, qba_spectrum** out);
QBA_API void qba_spectrum_free(qba_spectrum* s);

QBA_API int qba_spectrum_points(const qba_spectrum* s);
QBA_API int qba_spectrum_sources(const qba_spectrum* s); /* 6, or 7 with white noise */
QBA_API const char* qba_spectrum_source_name(const qba_spectrum* s, int source);
QBA_API qba_status qba_spectrum_row(const qba_spectrum* s, int i, double* freq_hz, double* total,
                                    double* per_source /* length >= qba_spectrum_sources */);

/* Integral of (total - 1) over [lo, hi] Hz; zpf_units != 0 converts to
 * x_zpf^2 units via the spectrum's calibration constant. */
QBA_API qba_status qba_variance(const qba_spectrum* s, double lo_hz, double hi_hz, int zpf_units,
                                double* out);

/* ---- calibration and fitting ------------------------------------------ */

/* R_BA^2 / R_Th^2 from on-resonance heights A (vacuum drive) and B (white
 * noise drive with n_wn quanta). eta cancels; pass 1.0 when unknown. */
QBA_API qba_status qba_calibration_ratio(double a_height, double b_height, double n_wn,
                                         double eta_det, double* ratio);

QBA_API qba_status qba_fit_bath(const qba_params* p, const double* freq_hz, const double* psd_sn,
                                int n, double t_min_k, double t_max_k, double* t_out_k,
                                double* residual, int* iterations);

/* ---- misc -------------------------------------------------------------- */

/* Cap sweep parallelism; 0 = hardware default. Returns the effective cap. */
QBA_API int qba_set_threads(int n);

QBA_API const char* qba_status_name(qba_status s);

/* Thread-local detail message for the most recent failure. */
QBA_API const char* qba_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* QBA_H */

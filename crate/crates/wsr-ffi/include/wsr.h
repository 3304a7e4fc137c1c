/* C interface to the wsr weighted scoring rules library. */

#ifndef WSR_H
#define WSR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Whether a computed score is defined; mirrors the library's score status.
 */
typedef enum {
  WSR_SCORE_STATUS_DEFINED = 0,
  WSR_SCORE_STATUS_UNDEFINED_WEIGHT_MASS = 1,
  WSR_SCORE_STATUS_INVALID_INPUT = 2,
} WsrScoreStatus;

/**
 * Status code returned by every wsr FFI call.
 */
typedef enum {
  WSR_STATUS_OK = 0,
  WSR_STATUS_NULL_POINTER = 1,
  WSR_STATUS_INVALID_INPUT = 2,
  WSR_STATUS_DIMENSION_MISMATCH = 3,
  WSR_STATUS_BAD_MEMBER_WEIGHTS = 4,
  WSR_STATUS_INVALID_BOUNDS = 5,
  WSR_STATUS_NON_POSITIVE_SCALE = 6,
  WSR_STATUS_DEGENERATE_SAMPLE = 7,
  WSR_STATUS_TOO_FEW_MEMBERS = 8,
  WSR_STATUS_BAD_VS_PARAMS = 9,
  WSR_STATUS_NEGATIVE_WEIGHT = 10,
  WSR_STATUS_INTERNAL_ERROR = 11,
} WsrStatus;

/**
 * Built-in weight/chaining families. For `Interval` the two parameters
 * are the bounds (a, b); for the Gaussian families they are (mu, sigma).
 */
typedef enum {
  WSR_WEIGHT_FAMILY_INTERVAL = 0,
  WSR_WEIGHT_FAMILY_GAUSS_CDF = 1,
  WSR_WEIGHT_FAMILY_GAUSS_PDF = 2,
} WsrWeightFamily;

/**
 * Opaque handle to an m-member univariate ensemble forecast.
 */
typedef struct WsrEnsemble WsrEnsemble;

/**
 * Opaque handle to a d-by-m multivariate ensemble forecast.
 */
typedef struct WsrMultiEnsemble WsrMultiEnsemble;

/**
 * One score for one forecast case. `value` is NaN unless `status` is
 * `Defined`.
 */
typedef struct {
  double value;
  WsrScoreStatus status;
  /**
   * Nonzero when a custom chaining function decreased on the sample grid.
   */
  int32_t decreasing_chain;
} WsrScore;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an ensemble from `len` members. `weights` may be NULL for
 * uniform weights; otherwise it must hold `len` nonnegative values.
 * On success writes a handle to `out`; release it with
 * `wsr_ensemble_free`.
 *
 * # Safety
 * `members` must point to `len` readable doubles, `weights` to `len`
 * readable doubles when non-NULL, and `out` must be writable.
 */
WsrStatus wsr_ensemble_new(const double *members,
                           uintptr_t len,
                           const double *weights,
                           WsrEnsemble **out);

/**
 * Releases an ensemble handle. NULL is a no-op.
 *
 * # Safety
 * `handle` must be NULL or a pointer returned by `wsr_ensemble_new` that
 * has not been freed yet.
 */
void wsr_ensemble_free(WsrEnsemble *handle);

/**
 * Creates a multivariate ensemble from a d-by-m matrix stored column-major
 * (member j occupies `data[j*dim .. (j+1)*dim]`). `weights` may be NULL.
 *
 * # Safety
 * `data` must point to `dim * members` readable doubles, `weights` to
 * `members` readable doubles when non-NULL, and `out` must be writable.
 */
WsrStatus wsr_multi_ensemble_new(const double *data,
                                 uintptr_t dim,
                                 uintptr_t members,
                                 const double *weights,
                                 WsrMultiEnsemble **out);

/**
 * Releases a multivariate ensemble handle. NULL is a no-op.
 *
 * # Safety
 * `handle` must be NULL or a pointer returned by `wsr_multi_ensemble_new`
 * that has not been freed yet.
 */
void wsr_multi_ensemble_free(WsrMultiEnsemble *handle);

/**
 * CRPS of an ensemble forecast.
 *
 * # Safety
 * `ens` must be a live handle and `out` writable.
 */
WsrStatus wsr_crps(const WsrEnsemble *ens, double obs, WsrScore *out);

/**
 * LogS via Gaussian KDE; pass `bw <= 0` or NaN to use the default
 * bandwidth rule.
 *
 * # Safety
 * `ens` must be a live handle and `out` writable.
 */
WsrStatus wsr_logs(const WsrEnsemble *ens, double obs, double bw, WsrScore *out);

/**
 * Threshold-weighted CRPS with a built-in chaining family.
 *
 * # Safety
 * `ens` must be a live handle and `out` writable.
 */
WsrStatus wsr_twcrps(const WsrEnsemble *ens,
                     double obs,
                     WsrWeightFamily family,
                     double param1,
                     double param2,
                     WsrScore *out);

/**
 * Outcome-weighted CRPS with a built-in weight family.
 *
 * # Safety
 * `ens` must be a live handle and `out` writable.
 */
WsrStatus wsr_owcrps(const WsrEnsemble *ens,
                     double obs,
                     WsrWeightFamily family,
                     double param1,
                     double param2,
                     WsrScore *out);

/**
 * Conditional (censored = 0) or censored (censored != 0) likelihood score
 * for the interval weight 1{a < z < b}. Pass `bw <= 0` or NaN for the
 * default bandwidth.
 *
 * # Safety
 * `ens` must be a live handle and `out` writable.
 */
WsrStatus wsr_clogs(const WsrEnsemble *ens,
                    double obs,
                    double a,
                    double b,
                    double bw,
                    int32_t censored,
                    WsrScore *out);

/**
 * Energy score. `obs` must hold `dim` values matching the ensemble.
 *
 * # Safety
 * `ens` must be a live handle, `obs` must point to `dim` readable doubles,
 * and `out` must be writable.
 */
WsrStatus wsr_es(const WsrMultiEnsemble *ens, const double *obs, uintptr_t dim, WsrScore *out);

/**
 * Variogram score of order `p`. `scaling` may be NULL for all-ones, or a
 * row-major d-by-d matrix of nonnegative entries.
 *
 * # Safety
 * `ens` must be a live handle, `obs` must point to `dim` readable doubles,
 * `scaling` to `dim * dim` readable doubles when non-NULL, and `out` must
 * be writable.
 */
WsrStatus wsr_vs(const WsrMultiEnsemble *ens,
                 const double *obs,
                 uintptr_t dim,
                 double p,
                 const double *scaling,
                 WsrScore *out);

/**
 * Gaussian-kernel score (MMDS).
 *
 * # Safety
 * `ens` must be a live handle, `obs` must point to `dim` readable doubles,
 * and `out` must be writable.
 */
WsrStatus wsr_mmds(const WsrMultiEnsemble *ens, const double *obs, uintptr_t dim, WsrScore *out);

/**
 * Threshold-weighted energy score with the componentwise clamp chain onto
 * the box [a, b]; `a` and `b` each hold `dim` values.
 *
 * # Safety
 * `ens` must be a live handle; `obs`, `a`, and `b` must each point to
 * `dim` readable doubles; `out` must be writable.
 */
WsrStatus wsr_twes(const WsrMultiEnsemble *ens,
                   const double *obs,
                   uintptr_t dim,
                   const double *a,
                   const double *b,
                   WsrScore *out);

/**
 * Threshold-weighted variogram score with the componentwise clamp chain.
 *
 * # Safety
 * As for `wsr_twes`; additionally `scaling` must point to `dim * dim`
 * readable doubles when non-NULL.
 */
WsrStatus wsr_twvs(const WsrMultiEnsemble *ens,
                   const double *obs,
                   uintptr_t dim,
                   const double *a,
                   const double *b,
                   double p,
                   const double *scaling,
                   WsrScore *out);

/**
 * Threshold-weighted Gaussian-kernel score with the componentwise clamp
 * chain.
 *
 * # Safety
 * As for `wsr_twes`.
 */
WsrStatus wsr_twmmds(const WsrMultiEnsemble *ens,
                     const double *obs,
                     uintptr_t dim,
                     const double *a,
                     const double *b,
                     WsrScore *out);

/**
 * Outcome-weighted energy score with the box-indicator weight
 * 1{a_i < z_i < b_i for all i}.
 *
 * # Safety
 * As for `wsr_twes`.
 */
WsrStatus wsr_owes(const WsrMultiEnsemble *ens,
                   const double *obs,
                   uintptr_t dim,
                   const double *a,
                   const double *b,
                   WsrScore *out);

/**
 * Outcome-weighted variogram score with the box-indicator weight.
 *
 * # Safety
 * As for `wsr_twvs`.
 */
WsrStatus wsr_owvs(const WsrMultiEnsemble *ens,
                   const double *obs,
                   uintptr_t dim,
                   const double *a,
                   const double *b,
                   double p,
                   const double *scaling,
                   WsrScore *out);

/**
 * Outcome-weighted Gaussian-kernel score with the box-indicator weight.
 *
 * # Safety
 * As for `wsr_twes`.
 */
WsrStatus wsr_owmmds(const WsrMultiEnsemble *ens,
                     const double *obs,
                     uintptr_t dim,
                     const double *a,
                     const double *b,
                     WsrScore *out);

/**
 * Static description of a status code; never NULL.
 */
const char *wsr_status_message(WsrStatus status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* WSR_H */

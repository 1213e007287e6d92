#ifndef SINGMAC_H
#define SINGMAC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SingmacStatus {
  SINGMAC_STATUS_OK = 0,
  SINGMAC_STATUS_CHECK_FAILED = 1,
  SINGMAC_STATUS_INVALID_ARGUMENT = 2,
  SINGMAC_STATUS_BUDGET_EXCEEDED = 3,
  SINGMAC_STATUS_POLE = 4,
  SINGMAC_STATUS_NULL_POINTER = 5,
  SINGMAC_STATUS_INTERNAL = 6,
} SingmacStatus;

typedef struct SingmacQuasistaircase SingmacQuasistaircase;

typedef struct SingmacReport SingmacReport;

typedef struct SingmacSpecialization SingmacSpecialization;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or null. Owned by
 * the library; valid until the next failing call on the same thread.
 */
const char *singmac_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void singmac_string_free(char *s);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum SingmacStatus singmac_quasistaircase_new(uint32_t m,
                                              uint32_t n,
                                              uint32_t d,
                                              uint32_t k,
                                              size_t big_n,
                                              struct SingmacQuasistaircase **out);

/**
 * # Safety
 * `q` must come from [`singmac_quasistaircase_new`] or be null.
 */
void singmac_quasistaircase_free(struct SingmacQuasistaircase *q);

/**
 * `{m, n, d, K, N, lambda, tau, nu}` as JSON.
 *
 * # Safety
 * `q` must be a live handle and `out` a valid pointer.
 */
enum SingmacStatus singmac_quasistaircase_json(const struct SingmacQuasistaircase *q, char **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum SingmacStatus singmac_specialization_new(uint64_t m,
                                              uint64_t n,
                                              int64_t k,
                                              struct SingmacSpecialization **out);

/**
 * # Safety
 * `s` must come from [`singmac_specialization_new`] or be null.
 */
void singmac_specialization_free(struct SingmacSpecialization *s);

/**
 * Verify singularity of the labels of `q` at `s`. `full`: negative for
 * the default size gate, 0 for structural checks, positive for all
 * checks. Returns `CheckFailed` (with the report still written) when a
 * check fails.
 *
 * # Safety
 * Handles must be live and `out` a valid pointer.
 */
enum SingmacStatus singmac_verify(const struct SingmacQuasistaircase *q,
                                  const struct SingmacSpecialization *s,
                                  int32_t full,
                                  struct SingmacReport **out);

/**
 * 1 if no enabled check failed, 0 otherwise, −1 for null.
 *
 * # Safety
 * `r` must be a live handle or null.
 */
int32_t singmac_report_passed(const struct SingmacReport *r);

/**
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum SingmacStatus singmac_report_json(const struct SingmacReport *r, char **out);

/**
 * # Safety
 * `r` must come from [`singmac_verify`] or be null.
 */
void singmac_report_free(struct SingmacReport *r);

/**
 * Critical partners of `alpha` as a JSON list of `{beta, p, len}`.
 *
 * # Safety
 * `alpha` must point to `len` values and `out` be a valid pointer.
 */
enum SingmacStatus singmac_critical_search(const uint32_t *alpha,
                                           size_t len,
                                           uint32_t m,
                                           uint32_t n,
                                           size_t max_len,
                                           char **out);

/**
 * `M_α` at `s` with coefficients rendered as strings.
 *
 * # Safety
 * `alpha` must point to `len` values, `s` be live and `out` valid.
 */
enum SingmacStatus singmac_macdonald_specialized(const uint32_t *alpha,
                                                 size_t len,
                                                 const struct SingmacSpecialization *s,
                                                 char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SINGMAC_H */

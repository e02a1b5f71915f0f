#ifndef SEMICROSS_H
#define SEMICROSS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ScStatus {
  SC_STATUS_OK = 0,
  /**
   * The scenario ran and some check failed; the report is still returned.
   */
  SC_STATUS_CHECK_FAILED = 1,
  SC_STATUS_PARSE_ERROR = 2,
  SC_STATUS_INVALID_ARGUMENT = 3,
  SC_STATUS_NULL_POINTER = 4,
  SC_STATUS_OVERFLOW = 5,
  SC_STATUS_PANIC = 6,
} ScStatus;

/**
 * A finite set with a self-map.
 */
typedef struct ScDynSystem ScDynSystem;

/**
 * A finitely generated module over `Z` or `Z[i]`.
 */
typedef struct ScModule ScModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static string.
 */
const char *sc_version(void);

/**
 * Message for the last failure on this thread; empty if none. Valid until
 * the next failing call on the same thread.
 */
const char *sc_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sc_string_free(char *s);

/**
 * Parses a module description such as
 * `{"domain": "Z", "free_rank": 1, "torsion": [6]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ScStatus sc_module_from_json(const char *json, struct ScModule **out);

/**
 * # Safety
 * `m` must be null or a handle from [`sc_module_from_json`], not yet freed.
 */
void sc_module_free(struct ScModule *m);

/**
 * Number of coordinates (free rank plus torsion factors).
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum ScStatus sc_module_dim(const struct ScModule *m, size_t *out);

/**
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum ScStatus sc_module_has_torsion(const struct ScModule *m, bool *out);

/**
 * Writes the coordinates of `(r_re + r_im i) * x` to `out`.
 *
 * # Safety
 * `coords` and `out` must each hold `len` values, `len` equal to the
 * module dimension.
 */
enum ScStatus sc_module_scalar_action(const struct ScModule *m,
                                      int64_t r_re,
                                      int64_t r_im,
                                      const int64_t *coords,
                                      size_t len,
                                      int64_t *out);

/**
 * Whether multiplication by `r_re + r_im i` is injective on the module.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum ScStatus sc_module_action_injective(const struct ScModule *m,
                                         int64_t r_re,
                                         int64_t r_im,
                                         bool *out);

/**
 * `sigma[x]` is the image of `x`; all images must be below `n`.
 *
 * # Safety
 * `sigma` must hold `n` values and `out` be a valid pointer.
 */
enum ScStatus sc_dynsys_new(const size_t *sigma, size_t n, struct ScDynSystem **out);

/**
 * # Safety
 * `sys` must be null or a handle from [`sc_dynsys_new`], not yet freed.
 */
void sc_dynsys_free(struct ScDynSystem *sys);

/**
 * Number of weakly connected components of the functional graph.
 *
 * # Safety
 * `sys` must be a live handle and `out` a valid pointer.
 */
enum ScStatus sc_dynsys_component_count(const struct ScDynSystem *sys, size_t *out);

/**
 * Dimension of the span of `1` and the pullbacks of the integer-valued
 * function `values` (length `n`, the size of the system).
 *
 * # Safety
 * `values` must hold `n` values and `out` be a valid pointer.
 */
enum ScStatus sc_dynsys_cyclic_dimension(const struct ScDynSystem *sys,
                                         const int64_t *values,
                                         size_t n,
                                         size_t *out);

/**
 * Number of characteristic functions used to generate all functions, and
 * whether the rank certificate held.
 *
 * # Safety
 * `sys` must be a live handle; `count` and `certified` valid pointers.
 */
enum ScStatus sc_dynsys_orbit_generators(const struct ScDynSystem *sys,
                                         size_t *count,
                                         bool *certified);

/**
 * Runs a JSON scenario and returns the JSON report in `out_report` (free
 * with [`sc_string_free`]). `seed` overrides the file's seed when
 * `override_seed` is set. Returns `CheckFailed` with a report when some
 * check fails.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out_report` a valid pointer.
 */
enum ScStatus sc_run_scenario_json(const char *json,
                                   uint64_t seed,
                                   bool override_seed,
                                   char **out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMICROSS_H */

#ifndef EVONET_H
#define EVONET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum EvonetStatus {
  EVONET_STATUS_OK = 0,
  EVONET_STATUS_NULL_POINTER = 1,
  EVONET_STATUS_INVALID_UTF8 = 2,
  EVONET_STATUS_CONFIG = 3,
  EVONET_STATUS_RUN = 4,
  EVONET_STATUS_BUFFER_TOO_SMALL = 5,
  EVONET_STATUS_IO = 6,
  EVONET_STATUS_INSUFFICIENT_DATA = 7,
  EVONET_STATUS_PANIC = 8,
} EvonetStatus;

// Opaque run configuration.
typedef struct EvonetConfig EvonetConfig;

// Opaque result of a finished run.
typedef struct EvonetResult EvonetResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *evonet_version(void);

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *evonet_last_error(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void evonet_string_free(char *s);

// Writes a new default configuration to `*out`.
//
// # Safety
// `out` must be a valid pointer.
enum EvonetStatus evonet_config_new(struct EvonetConfig **out);

// Parses a TOML configuration into a new handle at `*out`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum EvonetStatus evonet_config_from_toml(const char *text, struct EvonetConfig **out);

// Serializes the configuration to a TOML string owned by the caller
// (free with [`evonet_string_free`]).
//
// # Safety
// `cfg` must be a live handle and `out` a valid pointer.
enum EvonetStatus evonet_config_to_toml(const struct EvonetConfig *cfg, char **out);

// # Safety
// `cfg` must be a live handle and `name` a NUL-terminated string.
enum EvonetStatus evonet_config_set_problem(struct EvonetConfig *cfg, const char *name);

// Selects the algorithm family with default parameters:
// `panmictic`, `cga`, `sotea1` or `sotea2`.
//
// # Safety
// `cfg` must be a live handle and `family` a NUL-terminated string.
enum EvonetStatus evonet_config_set_algorithm(struct EvonetConfig *cfg, const char *family);

// # Safety
// `cfg` must be a live handle and `name` a NUL-terminated string.
enum EvonetStatus evonet_config_set_design(struct EvonetConfig *cfg, const char *name);

// # Safety
// `cfg` must be a live handle.
enum EvonetStatus evonet_config_set_seed(struct EvonetConfig *cfg, uint64_t seed);

// # Safety
// `cfg` must be a live handle.
enum EvonetStatus evonet_config_set_population(struct EvonetConfig *cfg, size_t population);

// # Safety
// `cfg` must be a live handle.
enum EvonetStatus evonet_config_set_generations(struct EvonetConfig *cfg, uint64_t generations);

// Enables or disables ETV telemetry.
//
// # Safety
// `cfg` must be a live handle.
enum EvonetStatus evonet_config_set_etv(struct EvonetConfig *cfg, bool enabled);

// Destroys a configuration. Null is ignored.
//
// # Safety
// `cfg` must be null or a live handle not used afterwards.
void evonet_config_free(struct EvonetConfig *cfg);

// Executes one run and writes its result handle to `*out`.
//
// # Safety
// `cfg` must be a live handle and `out` a valid pointer.
enum EvonetStatus evonet_run(const struct EvonetConfig *cfg, struct EvonetResult **out);

// Best objective value found (feasible if any feasible point was seen),
// its total constraint violation, and the number of evaluations.
//
// # Safety
// `res` must be a live handle; output pointers may be null.
enum EvonetStatus evonet_result_best(const struct EvonetResult *res,
                                     double *f,
                                     double *phi,
                                     uint64_t *evaluations);

// Copies the best genome into `buf`. `*len` always receives the genome
// length, so a call with `cap = 0` queries the size.
//
// # Safety
// `res` must be a live handle and `buf` valid for `cap` writes.
enum EvonetStatus evonet_result_best_genes(const struct EvonetResult *res,
                                           double *buf,
                                           size_t cap,
                                           size_t *len);

// Best feasible objective per generation; NaN before feasibility.
//
// # Safety
// `res` must be a live handle and `buf` valid for `cap` writes.
enum EvonetStatus evonet_result_history(const struct EvonetResult *res,
                                        double *buf,
                                        size_t cap,
                                        size_t *len);

// Sizes of all finalized (non-censored) ETVs in birth order.
//
// # Safety
// `res` must be a live handle and `buf` valid for `cap` writes.
enum EvonetStatus evonet_result_etv_sizes(const struct EvonetResult *res,
                                          uint32_t *buf,
                                          size_t cap,
                                          size_t *len);

// Writes all telemetry files of the run into directory `dir`.
//
// # Safety
// `res` must be a live handle and `dir` a NUL-terminated string.
enum EvonetStatus evonet_result_write(const struct EvonetResult *res, const char *dir);

// Destroys a result. Null is ignored.
//
// # Safety
// `res` must be null or a live handle not used afterwards.
void evonet_result_free(struct EvonetResult *res);

// Evaluates problem `name` at the `n` values of `x`.
//
// # Safety
// `name` must be a NUL-terminated string and `x` valid for `n` reads.
enum EvonetStatus evonet_evaluate(const char *name,
                                  const double *x,
                                  size_t n,
                                  double *f,
                                  double *phi);

// Log-binned least-squares power-law fit over `[x_min, x_max]`.
//
// # Safety
// `samples` must be valid for `n` reads; output pointers may be null.
enum EvonetStatus evonet_fit_power_law(const uint64_t *samples,
                                       size_t n,
                                       uint64_t x_min,
                                       uint64_t x_max,
                                       double *exponent,
                                       double *r_squared);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EVONET_H */

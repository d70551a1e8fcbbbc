#ifndef MOOLAB_H
#define MOOLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum MoolabStatus {
  MOOLAB_STATUS_OK = 0,
  MOOLAB_STATUS_NULL_POINTER = 1,
  MOOLAB_STATUS_INVALID_ARGUMENT = 2,
  MOOLAB_STATUS_UNKNOWN_NAME = 3,
  MOOLAB_STATUS_DIMENSION_MISMATCH = 4,
  MOOLAB_STATUS_BUFFER_TOO_SMALL = 5,
  MOOLAB_STATUS_RUNTIME_ERROR = 6,
  MOOLAB_STATUS_PANIC = 7,
} MoolabStatus;

/**
 * A set of objective vectors.
 */
typedef struct MoolabFront MoolabFront;

/**
 * A benchmark problem.
 */
typedef struct MoolabProblem MoolabProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays valid until
 * the next failing call on the same thread.
 */
const char *moolab_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *moolab_version(void);

/**
 * Creates a problem by name (`"ZDT1"`, `"DTLZ2:5"`, ...).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MoolabStatus moolab_problem_new(const char *name, struct MoolabProblem **out);

/**
 * # Safety
 * `problem` must come from `moolab_problem_new` and not be used afterwards. Null is ignored.
 */
void moolab_problem_free(struct MoolabProblem *problem);

/**
 * # Safety
 * `problem` must be a live handle; the out pointers must be valid.
 */
enum MoolabStatus moolab_problem_dimensions(const struct MoolabProblem *problem,
                                            size_t *n_vars,
                                            size_t *n_objectives);

/**
 * Evaluates one decision vector into `objectives`.
 *
 * # Safety
 * `variables` must hold `n_vars` doubles and `objectives` room for `n_objectives`.
 */
enum MoolabStatus moolab_problem_evaluate(const struct MoolabProblem *problem,
                                          const double *variables,
                                          size_t n_vars,
                                          double *objectives,
                                          size_t n_objectives);

/**
 * Runs `algorithm` (NSGAII, SMPSO, GDE3, MOEAD) with default parameters and returns the
 * final front.
 *
 * # Safety
 * Pointers must be valid; `out` receives a handle to free with `moolab_front_free`.
 */
enum MoolabStatus moolab_run(const char *algorithm,
                             const struct MoolabProblem *problem,
                             uint64_t max_evaluations,
                             uint64_t seed,
                             struct MoolabFront **out);

/**
 * Builds a front from `rows * cols` row-major doubles.
 *
 * # Safety
 * `data` must hold `rows * cols` doubles.
 */
enum MoolabStatus moolab_front_new(const double *data,
                                   size_t rows,
                                   size_t cols,
                                   struct MoolabFront **out);

/**
 * Sampled reference front of a named problem.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MoolabStatus moolab_reference_front(const char *name, struct MoolabFront **out);

/**
 * # Safety
 * `front` must come from this library and not be used afterwards. Null is ignored.
 */
void moolab_front_free(struct MoolabFront *front);

/**
 * Number of points and objectives.
 *
 * # Safety
 * `front` must be a live handle; the out pointers must be valid.
 */
enum MoolabStatus moolab_front_shape(const struct MoolabFront *front, size_t *rows, size_t *cols);

/**
 * Copies the points row-major into `buffer`, which must hold `rows * cols` doubles.
 *
 * # Safety
 * `buffer` must have room for `capacity` doubles.
 */
enum MoolabStatus moolab_front_copy(const struct MoolabFront *front,
                                    double *buffer,
                                    size_t capacity);

/**
 * Exact hypervolume of `front` against `reference_point` (no normalization).
 *
 * # Safety
 * `reference_point` must hold `len` doubles and `out` be valid.
 */
enum MoolabStatus moolab_hypervolume(const struct MoolabFront *front,
                                     const double *reference_point,
                                     size_t len,
                                     double *out);

/**
 * Additive epsilon of `front` relative to `reference` (no normalization).
 *
 * # Safety
 * Handles must be live and `out` valid.
 */
enum MoolabStatus moolab_epsilon(const struct MoolabFront *front,
                                 const struct MoolabFront *reference,
                                 double *out);

/**
 * Inverted generational distance of `front` relative to `reference` (no normalization).
 *
 * # Safety
 * Handles must be live and `out` valid.
 */
enum MoolabStatus moolab_igd(const struct MoolabFront *front,
                             const struct MoolabFront *reference,
                             double *out);

/**
 * Named indicator (EP, SPREAD, HV, IGD, IGD+) on fronts normalized by the reference front.
 *
 * # Safety
 * `name` must be a NUL-terminated string, handles live and `out` valid.
 */
enum MoolabStatus moolab_indicator(const char *name,
                                   const struct MoolabFront *front,
                                   const struct MoolabFront *reference,
                                   double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOOLAB_H */

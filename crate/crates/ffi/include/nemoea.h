#ifndef NEMOEA_H
#define NEMOEA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NemoeaAlgorithm {
  NEMOEA_ALGORITHM_NE_MOEA = 0,
  NEMOEA_ALGORITHM_NSGA2 = 1,
  NEMOEA_ALGORITHM_SMS_EMOA = 2,
  NEMOEA_ALGORITHM_NSGA3 = 3,
} NemoeaAlgorithm;

typedef enum NemoeaStatus {
  NEMOEA_STATUS_OK = 0,
  NEMOEA_STATUS_NULL_POINTER = 1,
  NEMOEA_STATUS_INVALID_ARGUMENT = 2,
  NEMOEA_STATUS_DIMENSION_MISMATCH = 3,
  NEMOEA_STATUS_PARSE = 4,
  NEMOEA_STATUS_BUFFER_TOO_SMALL = 5,
  NEMOEA_STATUS_INTERNAL = 6,
} NemoeaStatus;

// Opaque problem instance.
typedef struct NemoeaProblem NemoeaProblem;

// Opaque result of one optimization run.
typedef struct NemoeaRun NemoeaRun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null after a success.
// The pointer stays valid until the next call into this library on the
// same thread.
const char *nemoea_last_error(void);

// Random knapsack instance with `n` items and `m` objectives and constraints.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum NemoeaStatus nemoea_problem_generate_kp(size_t n,
                                             size_t m,
                                             uint64_t seed,
                                             struct NemoeaProblem **out);

// Random NK-landscape with `n` bits, epistasis `k` and `m` objectives.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum NemoeaStatus nemoea_problem_generate_nk(size_t n,
                                             size_t k,
                                             size_t m,
                                             uint64_t seed,
                                             struct NemoeaProblem **out);

// Parses an instance file held in a NUL-terminated string.
//
// # Safety
// `text` must be a valid C string and `out` a valid handle slot.
enum NemoeaStatus nemoea_problem_load(const char *text, struct NemoeaProblem **out);

// # Safety
// `problem` must be null or a handle from this library that was not freed.
void nemoea_problem_free(struct NemoeaProblem *problem);

// Number of decision bits; 0 for a null handle.
//
// # Safety
// `problem` must be null or a live handle.
size_t nemoea_problem_num_bits(const struct NemoeaProblem *problem);

// Number of objectives; 0 for a null handle.
//
// # Safety
// `problem` must be null or a live handle.
size_t nemoea_problem_num_objectives(const struct NemoeaProblem *problem);

// Evaluates a genome given as `n` bytes (non-zero means set). Writes `m`
// objective values of the repaired genome and, if `repaired` is non-null,
// whether constraint repair changed the input.
//
// # Safety
// `bits` must point to `n` bytes and `objectives` to `m` writable doubles.
enum NemoeaStatus nemoea_problem_evaluate(const struct NemoeaProblem *problem,
                                          const uint8_t *bits,
                                          size_t n,
                                          double *objectives,
                                          size_t m,
                                          bool *repaired);

// Runs one algorithm with its default settings for `population_size`
// individuals and `generations` generations.
//
// # Safety
// `problem` must be a live handle and `out` a valid handle slot.
enum NemoeaStatus nemoea_run(const struct NemoeaProblem *problem,
                             enum NemoeaAlgorithm algorithm,
                             size_t population_size,
                             size_t generations,
                             uint64_t seed,
                             struct NemoeaRun **out);

// # Safety
// `run` must be null or a handle from this library that was not freed.
void nemoea_run_free(struct NemoeaRun *run);

// Number of archived non-dominated solutions; 0 for a null handle.
//
// # Safety
// `run` must be null or a live handle.
size_t nemoea_run_archive_len(const struct NemoeaRun *run);

// Total objective evaluations of the run; 0 for a null handle.
//
// # Safety
// `run` must be null or a live handle.
uint64_t nemoea_run_evaluations(const struct NemoeaRun *run);

// Copies archive objective vectors row-major into `buffer`, which holds
// `capacity` doubles. `written` receives the number of doubles required.
//
// # Safety
// `buffer` must point to `capacity` writable doubles.
enum NemoeaStatus nemoea_run_archive_points(const struct NemoeaRun *run,
                                            double *buffer,
                                            size_t capacity,
                                            size_t *written);

// Hypervolume of the archive of a bi-objective run with respect to
// `(ref_x, ref_y)`.
//
// # Safety
// `run` must be a live handle and `out` a valid pointer.
enum NemoeaStatus nemoea_run_hypervolume(const struct NemoeaRun *run,
                                         double ref_x,
                                         double ref_y,
                                         double *out);

// Hypervolume of `count` points stored row-major as `(x, y)` pairs.
//
// # Safety
// `points` must point to `2 * count` doubles.
enum NemoeaStatus nemoea_hypervolume_2d(const double *points,
                                        size_t count,
                                        double ref_x,
                                        double ref_y,
                                        double *out);

// Two-sided Wilcoxon rank-sum p-value of samples `a` and `b`.
//
// # Safety
// `a` and `b` must point to `na` and `nb` doubles.
enum NemoeaStatus nemoea_wilcoxon(const double *a,
                                  size_t na,
                                  const double *b,
                                  size_t nb,
                                  double *p_value);

// Threshold mutation rate `(1 - delta) ln(k) / n`.
//
// # Safety
// `out` must be a valid pointer.
enum NemoeaStatus nemoea_threshold_mutation_rate(size_t k, size_t n, double delta, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEMOEA_H */

#ifndef SPLITSEQ_H
#define SPLITSEQ_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>



/**
 * Which formula `splitseq_sequences` uses.
 */
typedef enum SplitseqMethod {
  SPLITSEQ_METHOD_MATRIX = 0,
  SPLITSEQ_METHOD_DIRECT = 1,
  SPLITSEQ_METHOD_TRACE = 2,
} SplitseqMethod;

/**
 * Status codes returned by every fallible call.
 */
typedef enum SplitseqStatus {
  SPLITSEQ_STATUS_OK = 0,
  SPLITSEQ_STATUS_NULL_ARGUMENT = 1,
  SPLITSEQ_STATUS_INVALID_UTF8 = 2,
  /**
   * The configuration or a request parameter is invalid.
   */
  SPLITSEQ_STATUS_CONFIG_ERROR = 3,
  /**
   * The pipeline rejected the input (e.g. not a normal-basis generator).
   */
  SPLITSEQ_STATUS_COMPUTE_ERROR = 4,
  /**
   * `splitseq_verify` ran and at least one check failed.
   */
  SPLITSEQ_STATUS_VERIFY_FAILED = 5,
  /**
   * The prime divides a denominator; no residues were written.
   */
  SPLITSEQ_STATUS_SKIPPED = 6,
  SPLITSEQ_STATUS_BUFFER_TOO_SMALL = 7,
  SPLITSEQ_STATUS_PANIC = 8,
} SplitseqStatus;

/**
 * Opaque handle to a configured field, Galois group and sequence family.
 */
typedef struct SplitseqJob SplitseqJob;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a job from a JSON configuration. On success `*out` receives a
 * handle to be released with [`splitseq_job_free`].
 *
 * # Safety
 * `config_json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SplitseqStatus splitseq_job_new(const char *config_json, struct SplitseqJob **out);

/**
 * Releases a job. Null is ignored.
 *
 * # Safety
 * `job` must come from [`splitseq_job_new`] and not be used afterwards.
 */
void splitseq_job_free(struct SplitseqJob *job);

/**
 * Field degree `d` (= group order) and number of conjugacy classes `r`.
 *
 * # Safety
 * `job` must be a live handle; the output pointers must be valid.
 */
enum SplitseqStatus splitseq_job_shape(const struct SplitseqJob *job,
                                       size_t *degree,
                                       size_t *classes);

/**
 * Field, group and initial terms as compact JSON.
 *
 * # Safety
 * `job` must be a live handle and `out` a valid pointer.
 */
enum SplitseqStatus splitseq_analyze(const struct SplitseqJob *job, char **out);

/**
 * Terms `from..=to` of class `class_index` (0-based) or of every class.
 *
 * # Safety
 * `job` must be a live handle and `out` a valid pointer.
 */
enum SplitseqStatus splitseq_sequences(const struct SplitseqJob *job,
                                       size_t class_index,
                                       size_t from,
                                       size_t to,
                                       enum SplitseqMethod method,
                                       char **out);

/**
 * Residues `a_{K_j,p} mod p` for all classes into `residues[0..len]`.
 * `len` must be at least the class count. Returns `Skipped` when `p`
 * divides a denominator.
 *
 * # Safety
 * `job` must be a live handle; `residues` must hold `len` values.
 */
enum SplitseqStatus splitseq_term_mod_p(const struct SplitseqJob *job,
                                        uint64_t p,
                                        uint64_t *residues,
                                        size_t len);

/**
 * Prime classification up to `max_prime` with the exceptional report.
 *
 * # Safety
 * `job` must be a live handle and `out` a valid pointer.
 */
enum SplitseqStatus splitseq_classify(const struct SplitseqJob *job,
                                      uint64_t max_prime,
                                      size_t jobs,
                                      char **out);

/**
 * Character table of the Galois group.
 *
 * # Safety
 * `job` must be a live handle and `out` a valid pointer.
 */
enum SplitseqStatus splitseq_chartab(const struct SplitseqJob *job, char **out);

/**
 * Runs every check for a configuration. The report is written even when
 * a check fails, in which case the status is `VerifyFailed`.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SplitseqStatus splitseq_verify(const char *config_json, char **out);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *splitseq_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void splitseq_string_free(char *s);

/**
 * Library version, static storage.
 */
const char *splitseq_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPLITSEQ_H */

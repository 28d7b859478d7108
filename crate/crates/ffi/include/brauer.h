#ifndef BRAUER_H
#define BRAUER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum BrauerStatus {
  BRAUER_STATUS_OK = 0,
  BRAUER_STATUS_NULL_ARGUMENT = 1,
  BRAUER_STATUS_INVALID_UTF8 = 2,
  /**
   * Bad group description, unknown task or instance, bad block index.
   */
  BRAUER_STATUS_INVALID_INPUT = 3,
  /**
   * The input is well formed but outside the supported hypotheses.
   */
  BRAUER_STATUS_PRECONDITION = 4,
  /**
   * A group or field exceeded its size cap.
   */
  BRAUER_STATUS_TOO_LARGE = 5,
  /**
   * An internal consistency check failed.
   */
  BRAUER_STATUS_CONTRACT = 6,
  BRAUER_STATUS_IO = 7,
  BRAUER_STATUS_PANIC = 8,
} BrauerStatus;

/**
 * A finite group given by its textual description.
 */
typedef struct BrauerGroup BrauerGroup;

/**
 * A finished verification report.
 */
typedef struct BrauerReport BrauerReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Owned by
 * the library and valid until the next call on this thread.
 */
const char *brauer_last_error(void);

/**
 * Library version tag, a static string.
 */
const char *brauer_version(void);

/**
 * Parses a group description such as `kind=symmetric,n=4` and builds the
 * group, refusing orders above `max_order` (0 selects the default cap).
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
enum BrauerStatus brauer_group_new(const char *spec, size_t max_order, struct BrauerGroup **out);

/**
 * # Safety
 * `group` must come from [`brauer_group_new`] and not be used afterwards.
 */
void brauer_group_free(struct BrauerGroup *group);

/**
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum BrauerStatus brauer_group_order(const struct BrauerGroup *group, size_t *out);

/**
 * Canonical description of the group; free with [`brauer_string_free`].
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
enum BrauerStatus brauer_group_describe(const struct BrauerGroup *group, char **out);

/**
 * Runs a verification task (`axioms`, `lemma-ab`, `prop-ac`, `defining`,
 * `theorem-a`, `brown`) on all positive-defect blocks.
 *
 * # Safety
 * `group` must be a live handle, `task` a nul-terminated string and `out`
 * a valid pointer.
 */
enum BrauerStatus brauer_verify(const struct BrauerGroup *group,
                                const char *task,
                                uint64_t ell,
                                uint64_t seed,
                                struct BrauerReport **out);

/**
 * Runs a task on a named registry instance, including its recorded
 * expectations.
 *
 * # Safety
 * `instance` and `task` must be nul-terminated strings and `out` a valid
 * pointer.
 */
enum BrauerStatus brauer_verify_instance(const char *instance,
                                         const char *task,
                                         uint64_t ell,
                                         uint64_t seed,
                                         struct BrauerReport **out);

/**
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum BrauerStatus brauer_report_passed(const struct BrauerReport *report, bool *out);

/**
 * The report as pretty-printed JSON; free with [`brauer_string_free`].
 *
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum BrauerStatus brauer_report_json(const struct BrauerReport *report, char **out);

/**
 * # Safety
 * `report` must come from a verify call and not be used afterwards.
 */
void brauer_report_free(struct BrauerReport *report);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void brauer_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRAUER_H */

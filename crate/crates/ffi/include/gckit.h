#ifndef GCKIT_H
#define GCKIT_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GckStatus {
  GCK_STATUS_OK = 0,
  GCK_STATUS_NULL_POINTER = 1,
  GCK_STATUS_INVALID_UTF8 = 2,
  /**
   * The document or the options could not be parsed; a report naming the
   * problem is still produced by `gck_run`.
   */
  GCK_STATUS_INVALID_INPUT = 3,
  GCK_STATUS_UNKNOWN_COMMAND = 4,
  GCK_STATUS_PANIC = 5,
} GckStatus;

typedef enum GckCommand {
  GCK_COMMAND_CHECK = 0,
  GCK_COMMAND_POISSON = 1,
  GCK_COMMAND_DECOMPOSE = 2,
  GCK_COMMAND_ORTHCOMP = 3,
  GCK_COMMAND_LINEARIZE = 4,
  GCK_COMMAND_NORMALFORM = 5,
} GckCommand;

/**
 * A validated structure document.
 */
typedef struct GckDocument GckDocument;

/**
 * A finished report; `json` is NUL-terminated.
 */
typedef struct GckReport GckReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates a JSON structure document.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is a valid pointer. On success
 * `*out` owns a document to release with `gck_document_free`.
 */
enum GckStatus gck_document_parse(const char *json, struct GckDocument **out);

/**
 * # Safety
 * `doc` is null or was returned by `gck_document_parse` and not yet freed.
 */
void gck_document_free(struct GckDocument *doc);

/**
 * Runs `command`, a `GckCommand` value, on `doc`. `point` and `subspace`
 * may be null; `degree` bounds the identity suites (the command line uses 3).
 *
 * # Safety
 * `doc` is a live document; `point`, `subspace` are null or NUL-terminated;
 * `out` is a valid pointer. On `Ok` or `InvalidInput`, `*out` owns a report
 * to release with `gck_report_free`.
 */
enum GckStatus gck_run(const struct GckDocument *doc,
                       uint32_t command,
                       const char *point,
                       const char *subspace,
                       uint32_t degree,
                       struct GckReport **out);

/**
 * The compact JSON report, borrowed from `report`.
 *
 * # Safety
 * `report` is null or a live report; the result is valid until
 * `gck_report_free`.
 */
const char *gck_report_json(const struct GckReport *report);

/**
 * The command-line exit code of the report: 0, 1 or 2; -1 for null.
 *
 * # Safety
 * `report` is null or a live report.
 */
int32_t gck_report_exit_code(const struct GckReport *report);

/**
 * # Safety
 * `report` is null or was returned by `gck_run` and not yet freed.
 */
void gck_report_free(struct GckReport *report);

/**
 * Static NUL-terminated description of a status code.
 */
const char *gck_status_message(enum GckStatus status);

/**
 * Report schema version.
 */
uint32_t gck_schema_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GCKIT_H */

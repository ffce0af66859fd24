#ifndef ACGW_H
#define ACGW_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AcgwStatus {
  ACGW_STATUS_OK = 0,
  // Validation failure or a construction that does not apply.
  ACGW_STATUS_SEMANTIC = 1,
  ACGW_STATUS_PARSE = 2,
  ACGW_STATUS_NULL_ARGUMENT = 3,
  ACGW_STATUS_INVALID_UTF8 = 4,
  ACGW_STATUS_UNKNOWN_NAME = 5,
  ACGW_STATUS_PANIC = 6,
} AcgwStatus;

// A parsed and built document.
typedef struct AcgwDocument AcgwDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse and build a document.
//
// # Safety
// `text` must be a valid C string and `out` a writable pointer.
enum AcgwStatus acgw_document_parse(const char *text, struct AcgwDocument **out);

// # Safety
// `doc` must come from [`acgw_document_parse`] and not be used afterwards. Null is ignored.
void acgw_document_free(struct AcgwDocument *doc);

// `Ok` when every item validates; otherwise `Semantic` with the violations as the last error.
//
// # Safety
// `doc` must be a live document handle.
enum AcgwStatus acgw_document_validate(const struct AcgwDocument *doc);

// Number of declared items.
//
// # Safety
// `doc` must be a live document handle or null.
uintptr_t acgw_document_item_count(const struct AcgwDocument *doc);

// The canonical text form of the document.
//
// # Safety
// `doc` must be a live document handle and `out` writable.
enum AcgwStatus acgw_document_to_text(const struct AcgwDocument *doc, char **out);

// Run a command (`validate`, `homology`, `exact`, `snake`, `les`, `map-homology`, `oracle`,
// `render`) on document text, as the command-line tool would.
//
// `*stdout_out` receives the report and `*exit_out` the tool's exit code. The status is `Ok`
// whenever the command ran, even if it reported a failure through the exit code.
//
// # Safety
// String arguments must be valid C strings; output pointers must be writable.
enum AcgwStatus acgw_run(const char *text,
                         const char *command,
                         bool json,
                         char **stdout_out,
                         int32_t *exit_out);

// A random document of kind `complex`, `exact`, `map`, `ses`, `snake`, `strong-snake` or
// `linear`. A `size` of 0 uses the default bound.
//
// # Safety
// `kind` must be a valid C string and `out` writable.
enum AcgwStatus acgw_generate(const char *kind,
                              uint64_t seed,
                              uintptr_t size,
                              bool json,
                              char **out);

// # Safety
// `s` must come from this library and not be used afterwards. Null is ignored.
void acgw_string_free(char *s);

// The message of the last failed call on this thread, or null. Valid until the next call.
const char *acgw_last_error(void);

const char *acgw_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ACGW_H */

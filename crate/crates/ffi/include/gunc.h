#ifndef GUNC_H
#define GUNC_H

#include <stdbool.h>
#include <stddef.h>

typedef enum GuncStatus {
  GUNC_STATUS_OK = 0,
  GUNC_STATUS_NULL_POINTER = 1,
  GUNC_STATUS_INVALID_UTF8 = 2,
  GUNC_STATUS_PARSE_ERROR = 3,
  /*
   The document parsed but does not describe a valid ring.
   */
  GUNC_STATUS_INVALID_SPEC = 4,
  GUNC_STATUS_CAP_EXCEEDED = 5,
  GUNC_STATUS_UNKNOWN_PROPERTY = 6,
  GUNC_STATUS_UNKNOWN_THEOREM = 7,
  /*
   A Rust panic was caught at the boundary.
   */
  GUNC_STATUS_INTERNAL = 8,
} GuncStatus;

/*
 An immutable ring. Safe to share between threads.
 */
typedef struct GuncRing GuncRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses and builds a ring-spec document with default caps.

 # Safety
 `spec_json` must be a nul-terminated string and `out` a valid pointer.
 */
enum GuncStatus gunc_ring_from_spec(const char *spec_json, struct GuncRing **out);

/*
 # Safety
 `ring` must be null or a handle from `gunc_ring_from_spec` not yet freed.
 */
void gunc_ring_free(struct GuncRing *ring);

/*
 The number of elements, or 0 for a null handle.

 # Safety
 `ring` must be null or a live handle.
 */
size_t gunc_ring_order(const struct GuncRing *ring);

/*
 Decides `property` (`"graded-u-nil-clean"`, `"graded-nil-good"`, ...).
 `holds` receives 1 or 0; `counterexample`, if not null, receives the
 least failing element or `SIZE_MAX`.

 # Safety
 `ring` must be a live handle, `property` a nul-terminated string, `holds`
 a valid pointer and `counterexample` null or valid.
 */
enum GuncStatus gunc_ring_check(const struct GuncRing *ring,
                                const char *property,
                                bool strict_literal,
                                int *holds,
                                size_t *counterexample);

/*
 Structural facts as a JSON object; free with `gunc_string_free`.

 # Safety
 `ring` must be a live handle and `out` a valid pointer.
 */
enum GuncStatus gunc_ring_inspect_json(const struct GuncRing *ring, char **out);

/*
 Runs theorem checks. `ids` is a comma-separated list of registry ids or
 `"all"`; `corpus_json` is a corpus spec or null for the default corpus.
 `clean` receives 1 when no counterexample was found. The report JSON
 goes to `report_out`.

 # Safety
 `ids` must be a nul-terminated string, `corpus_json` null or one, and the
 out pointers valid.
 */
enum GuncStatus gunc_verify(const char *ids,
                            const char *corpus_json,
                            size_t workers,
                            int *clean,
                            char **report_out);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void gunc_string_free(char *s);

/*
 The message of this thread's last failed call, or `""`. Valid until the
 next call into the library on this thread.
 */
const char *gunc_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GUNC_H */

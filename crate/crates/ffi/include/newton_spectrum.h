#ifndef NEWTON_SPECTRUM_H
#define NEWTON_SPECTRUM_H

#include <stdbool.h>
#include <stddef.h>

// Report selector for `ns_report_json`.
typedef enum NsReport {
  NS_REPORT_ANALYZE = 0,
  NS_REPORT_SPECTRUM = 1,
  NS_REPORT_PAIRS = 2,
  NS_REPORT_JORDAN = 3,
  NS_REPORT_BS_ROOT = 4,
  NS_REPORT_FAN = 5,
  NS_REPORT_DESCENT_CHECK = 6,
  NS_REPORT_ORACLE_CHECK = 7,
  NS_REPORT_IDENTITIES = 8,
} NsReport;

// Result code of every fallible call.
typedef enum NsStatus {
  NS_STATUS_OK = 0,
  // The input could not be parsed or is malformed.
  NS_STATUS_INPUT_ERROR = 1,
  // The input is valid but the invariant is unavailable for it.
  NS_STATUS_DOMAIN_ERROR = 2,
  NS_STATUS_NULL_POINTER = 3,
  // A string argument is not valid UTF-8.
  NS_STATUS_UTF8 = 4,
  // An internal panic was caught at the boundary.
  NS_STATUS_PANIC = 5,
} NsStatus;

// Opaque handle to a Newton polyhedron.
typedef struct NsPolyhedron NsPolyhedron;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a polyhedron from polynomial text such as `"x^2+y^3"`.
//
// `dim` is the number of variables, or 0 to infer it.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum NsStatus ns_polyhedron_from_text(const char *text,
                                      size_t dim,
                                      bool assume_isolated,
                                      struct NsPolyhedron **out);

// Builds a polyhedron from the JSON input form.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum NsStatus ns_polyhedron_from_json(const char *json, struct NsPolyhedron **out);

// Releases a polyhedron. Null is ignored.
//
// # Safety
// `p` must come from this library and not be used afterwards.
void ns_polyhedron_free(struct NsPolyhedron *p);

// Number of variables of the polyhedron, or 0 for null.
//
// # Safety
// `p` must be null or a live handle.
size_t ns_polyhedron_dim(const struct NsPolyhedron *p);

// Computes a report and writes it as a JSON string to `out`.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum NsStatus ns_report_json(const struct NsPolyhedron *p, enum NsReport which, char **out);

// Maximal Bernstein-Sato root as a canonical `"p/q"` string, and whether it
// is a root of the reduced polynomial.
//
// # Safety
// `p` must be a live handle; `root` and `reduced` valid pointers.
enum NsStatus ns_bs_root(const struct NsPolyhedron *p, char **root, bool *reduced);

// Runs the motivic descent check; `holds` receives the verdict.
//
// # Safety
// `p` must be a live handle and `holds` a valid pointer.
enum NsStatus ns_descent_check(const struct NsPolyhedron *p, bool *holds);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void ns_string_free(char *s);

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next call into the library on the same thread.
const char *ns_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEWTON_SPECTRUM_H */

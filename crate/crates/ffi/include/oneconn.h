#ifndef ONECONN_H
#define ONECONN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OcStatus {
  OC_STATUS_OK = 0,
  OC_STATUS_NULL_POINTER = 1,
  OC_STATUS_INVALID_UTF8 = 2,
  OC_STATUS_PARSE_ERROR = 3,
  OC_STATUS_PRECONDITION = 4,
  OC_STATUS_INTERNAL = 5,
} OcStatus;

typedef enum OcMethod {
  OC_METHOD_ONE_CONN = 0,
  OC_METHOD_NAIVE = 1,
} OcMethod;

/*
 Opaque graph handle.
 */
typedef struct OcGraph OcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a graph from JSON text. On success `*out` receives a handle to
 be released with [`oc_graph_free`].

 # Safety
 `json` must be null or a NUL-terminated string; `out` must be null or
 writable.
 */
enum OcStatus oc_graph_from_json(const char *json, struct OcGraph **out);

/*
 # Safety
 `g` must be null or a handle from [`oc_graph_from_json`] not yet freed.
 */
void oc_graph_free(struct OcGraph *g);

/*
 # Safety
 `g` must be a live handle or null; `out` must be null or writable.
 */
enum OcStatus oc_graph_vertex_count(const struct OcGraph *g, size_t *out);

/*
 `det(I - Lambda)` as a polynomial string.

 # Safety
 `g` must be a live handle or null; `out` must be null or writable.
 */
enum OcStatus oc_det(const struct OcGraph *g, char **out);

/*
 Covariance as `{"det": ..., "numerators": [[...]]}`.

 # Safety
 `g` must be a live handle or null; `out` must be null or writable.
 */
enum OcStatus oc_covariance(const struct OcGraph *g, enum OcMethod method, char **out);

/*
 Covariance by the trek rule; [`OcStatus::Precondition`] on cyclic graphs.

 # Safety
 `g` must be a live handle or null; `out` must be null or writable.
 */
enum OcStatus oc_trek_rule(const struct OcGraph *g, char **out);

/*
 Identifiability report as JSON.

 # Safety
 `g` must be a live handle or null; `out` must be null or writable.
 */
enum OcStatus oc_ident(const struct OcGraph *g, size_t trials, uint64_t seed, char **out);

/*
 Vanishing-ideal scan over degrees `1..=max_degree`, as a JSON array of
 per-degree reports.

 # Safety
 `g` must be a live handle or null; `out` must be null or writable.
 */
enum OcStatus oc_ideal_scan(const struct OcGraph *g, size_t max_degree, char **out);

/*
 Releases a string returned by this library.

 # Safety
 `s` must be null or a string produced by this library not yet freed.
 */
void oc_string_free(char *s);

/*
 Message for the last failed call on this thread; empty after success.
 Valid until the next call into the library on the same thread.
 */
const char *oc_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ONECONN_H */

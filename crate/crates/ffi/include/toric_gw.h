#ifndef TORIC_GW_H
#define TORIC_GW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TgwStatus {
  TGW_STATUS_OK = 0,
  TGW_STATUS_NULL_POINTER = 1,
  TGW_STATUS_INVALID_UTF8 = 2,
  TGW_STATUS_PARSE = 3,
  TGW_STATUS_SPEC = 4,
  TGW_STATUS_NON_GENERIC_LINE = 5,
  TGW_STATUS_UNSUPPORTED = 6,
  TGW_STATUS_DEGENERATE = 7,
  TGW_STATUS_COMPUTATION = 8,
  /*
   A check ran and found a mismatch.
   */
  TGW_STATUS_CHECK_FAILED = 9,
  TGW_STATUS_PANIC = 10,
} TgwStatus;

/*
 Opaque geometry handle.
 */
typedef struct TgwGeometry TgwGeometry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copies the last error message of this thread into `buf` (NUL
 terminated, truncated to `len`) and returns the full message length
 in bytes, or 0 if there is none.

 # Safety
 `buf` must be valid for `len` bytes or null.
 */
size_t tgw_last_error(char *buf, size_t len);

/*
 Parses a geometry description.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TgwStatus tgw_geometry_parse(const char *text, struct TgwGeometry **out);

/*
 # Safety
 `g` must come from [`tgw_geometry_parse`] and not be used afterwards.
 */
void tgw_geometry_free(struct TgwGeometry *g);

/*
 Number of fixed points and of oriented edges.

 # Safety
 `g` must be a live handle; the out pointers must be valid.
 */
enum TgwStatus tgw_geometry_counts(const struct TgwGeometry *g, size_t *points, size_t *edges);

/*
 Fixed points and edges as text.

 # Safety
 `g` must be a live handle and `out` a valid pointer.
 */
enum TgwStatus tgw_geometry_dump(const struct TgwGeometry *g, char **out);

/*
 Runs the recursion check on every lambda line of the geometry with its
 own cutoff and `t`-order. Counts are summed over lines. Returns
 `CheckFailed` if any identity fails.

 # Safety
 `g` must be a live handle; the out pointers must be valid.
 */
enum TgwStatus tgw_verify_recursion(const struct TgwGeometry *g,
                                    uint32_t kmax,
                                    size_t *checked,
                                    size_t *passed,
                                    size_t *skipped);

/*
 Small quantum product table at the origin, one product per line.

 # Safety
 `g` must be a live handle and `out` a valid pointer.
 */
enum TgwStatus tgw_quantum_table(const struct TgwGeometry *g, char **out);

/*
 Asymptotic series of the Gamma function through `u^order`.

 # Safety
 `out` must be a valid pointer.
 */
enum TgwStatus tgw_gamma_series(uint32_t order, char **out);

/*
 Compares the Gamma series with its stationary phase expansion through
 `u^order`. Returns `CheckFailed` on a mismatch.
 */
enum TgwStatus tgw_gamma_check(uint32_t order);

/*
 # Safety
 `s` must come from this library and not be used afterwards.
 */
void tgw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIC_GW_H */

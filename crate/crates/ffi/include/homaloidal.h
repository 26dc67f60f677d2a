#ifndef HOMALOIDAL_H
#define HOMALOIDAL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every fallible call.
 */
typedef enum HmlStatus {
  HML_STATUS_OK = 0,
  HML_STATUS_NULL_ARGUMENT = 1,
  HML_STATUS_INVALID_UTF8 = 2,
  HML_STATUS_INVALID_FIELD = 3,
  HML_STATUS_INVALID_INPUT = 4,
  /*
   The computation failed (for instance a degree did not stabilize).
   */
  HML_STATUS_COMPUTATION = 5,
  /*
   Two independent methods disagreed.
   */
  HML_STATUS_INCONSISTENCY = 6,
  HML_STATUS_PANIC = 7,
} HmlStatus;

typedef enum HmlVerdict {
  HML_VERDICT_HOMALOIDAL = 0,
  HML_VERDICT_NOT_DOMINANT = 1,
  HML_VERDICT_FIXED_COMPONENT = 2,
  HML_VERDICT_DEGREE_GT_ONE = 3,
  HML_VERDICT_UNDEFINED_MAP = 4,
} HmlVerdict;

/*
 A ternary form over a chosen field.
 */
typedef struct HmlPoly HmlPoly;

/*
 The result of `hml_analyze`.
 */
typedef struct HmlReport HmlReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread; empty when none. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *hml_last_error(void);

/*
 Library version, a static string.
 */
const char *hml_version(void);

/*
 Parses `text` in `x0, x1, x2` over `field` (`"0"`, `"p"` or `"p:e"`).

 # Safety
 `field` and `text` must be NUL-terminated strings and `out` a valid pointer.
 */
enum HmlStatus hml_poly_parse(const char *field, const char *text, struct HmlPoly **out);

/*
 Builds a named family member; `n < 0` means no parameter.

 # Safety
 `name` and `field` must be NUL-terminated strings and `out` a valid pointer.
 */
enum HmlStatus hml_family_make(const char *name,
                               int32_t n,
                               const char *field,
                               struct HmlPoly **out);

/*
 The polynomial in normal form; release with `hml_string_free`.

 # Safety
 `poly` must come from `hml_poly_parse` or `hml_family_make`.
 */
char *hml_poly_to_string(const struct HmlPoly *poly);

/*
 # Safety
 `poly` must come from this library and not be used afterwards; null is ignored.
 */
void hml_poly_free(struct HmlPoly *poly);

/*
 Runs the full analysis with `trials` generic trials from `seed`.

 # Safety
 `poly` must be a live handle and `out` a valid pointer.
 */
enum HmlStatus hml_analyze(const struct HmlPoly *poly,
                           uint32_t trials,
                           uint64_t seed,
                           struct HmlReport **out);

/*
 The report as JSON, owned by the report.

 # Safety
 `report` must be a live handle.
 */
const char *hml_report_json(const struct HmlReport *report);

/*
 # Safety
 `report` must be a live handle.
 */
enum HmlVerdict hml_report_verdict(const struct HmlReport *report);

/*
 Projective degrees `(d0, d1, d2)`; fails when the map has none (undefined
 map or fixed component).

 # Safety
 `report` must be a live handle and `d` point to three writable integers.
 */
enum HmlStatus hml_report_multidegree(const struct HmlReport *report, uint64_t *d);

/*
 # Safety
 `report` must come from `hml_analyze` and not be used afterwards; null is ignored.
 */
void hml_report_free(struct HmlReport *report);

/*
 Classifies the arrangement `"x0; x1; x0+x1; x2"` and writes its JSON
 verdict to `out_json` (release with `hml_string_free`).

 # Safety
 `field` and `lines` must be NUL-terminated strings and `out_json` a valid pointer.
 */
enum HmlStatus hml_arrangement_classify(const char *field,
                                        const char *lines,
                                        bool cross_check,
                                        uint64_t seed,
                                        char **out_json);

/*
 # Safety
 `s` must come from this library and not be used afterwards; null is ignored.
 */
void hml_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOMALOIDAL_H */

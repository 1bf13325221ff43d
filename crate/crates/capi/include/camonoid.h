#ifndef CAMONOID_H
#define CAMONOID_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 1..3 mirror the CLI exit-code contract
 * (input / guard / internal); extras cover ABI-level misuse.
 */
typedef enum CamStatus {
  CAM_OK = 0,
  CAM_ERR_INPUT = 1,
  CAM_ERR_GUARD = 2,
  CAM_ERR_INTERNAL = 3,
  CAM_ERR_NOT_ABELIAN = 4,
  CAM_ERR_NULL_ARGUMENT = 5,
  CAM_ERR_UTF8 = 6,
} CamStatus;

/**
 * Opaque analysis handle.
 */
typedef struct CamAnalysis CamAnalysis;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Analyzes `CA(G;A)` for the given group spec (e.g. `"cyclic:2xcyclic:2"`)
 * and alphabet size, writing a new handle to `out`. Free with
 * `cam_analysis_free`.
 *
 * # Safety
 * `group_spec` must be a valid NUL-terminated string and `out` a valid
 * pointer.
 */
enum CamStatus cam_analyze(const char *group_spec, uint32_t q, struct CamAnalysis **out);

/**
 * Frees a handle returned by `cam_analyze`. NULL is a no-op.
 *
 * # Safety
 * `analysis` must be a pointer from `cam_analyze`, freed at most once.
 */
void cam_analysis_free(struct CamAnalysis *analysis);

/**
 * Relative rank of the invertible subgroup in the full monoid. Fails with
 * `CAM_ERR_NOT_ABELIAN` for nonabelian groups.
 *
 * # Safety
 * Both pointers must be valid.
 */
enum CamStatus cam_analysis_relative_rank(const struct CamAnalysis *analysis, uint64_t *out);

/**
 * The full report as a JSON string. Free with `cam_string_free`.
 *
 * # Safety
 * Both pointers must be valid.
 */
enum CamStatus cam_analysis_json(const struct CamAnalysis *analysis, char **out);

/**
 * The invertible-subgroup structure string (e.g.
 * `"(1 wr S2) x (Z2 wr S1)^3 x (Z2xZ2 wr S2)"`). Free with
 * `cam_string_free`.
 *
 * # Safety
 * Both pointers must be valid.
 */
enum CamStatus cam_analysis_ica_structure(const struct CamAnalysis *analysis, char **out);

/**
 * Frees a string returned by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must come from this library, freed at most once.
 */
void cam_string_free(char *s);

/**
 * Library version as a static string; do not free.
 */
const char *cam_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CAMONOID_H */

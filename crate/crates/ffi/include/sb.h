#ifndef SB_FFI_H
#define SB_FFI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SbStatus {
  SB_STATUS_OK = 0,
  SB_STATUS_NULL_POINTER = 1,
  SB_STATUS_INVALID_UTF8 = 2,
  SB_STATUS_PARSE_ERROR = 3,
  SB_STATUS_INVALID_INPUT = 4,
  SB_STATUS_PANIC = 5,
} SbStatus;

typedef enum SbVerdict {
  SB_VERDICT_BIRATIONAL = 0,
  SB_VERDICT_NOT_BIRATIONAL = 1,
  SB_VERDICT_UNKNOWN = 2,
} SbVerdict;

/**
 * Opaque Brauer class.
 */
typedef struct SbClass SbClass;

/**
 * Opaque finite field `F_{p^D}`.
 */
typedef struct SbField SbField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or an empty string.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *sb_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sb_string_free(char *s);

/**
 * Parses a class from `{"invariants": [{"place", "num", "den"}, ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SbStatus sb_class_from_json(const char *json, struct SbClass **out);

/**
 * # Safety
 * `cls` must be a live handle; `out` must be writable.
 */
enum SbStatus sb_class_to_json(const struct SbClass *cls, char **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum SbStatus sb_class_tensor(const struct SbClass *a,
                              const struct SbClass *b,
                              struct SbClass **out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum SbStatus sb_class_power(const struct SbClass *a, int64_t k, struct SbClass **out);

/**
 * Period of the class; 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
uint64_t sb_class_period(const struct SbClass *a);

/**
 * # Safety
 * `a` must be null or a handle from this library, not yet freed.
 */
void sb_class_free(struct SbClass *a);

/**
 * Decides birationality of two varieties given as `{"class", "dim"}`.
 * `report` receives the verdict JSON, including the certificate when one exists.
 *
 * # Safety
 * `p`, `q` must be NUL-terminated strings; `verdict` and `report` must be writable.
 */
enum SbStatus sb_decide(const char *p, const char *q, enum SbVerdict *verdict, char **report);

/**
 * Replays a certificate; `valid` is set to 1 or 0 and `report` receives the check result.
 *
 * # Safety
 * `cert` must be a NUL-terminated string; `valid` and `report` must be writable.
 */
enum SbStatus sb_check_certificate(const char *cert, int32_t *valid, char **report);

/**
 * # Safety
 * `out` must be writable.
 */
enum SbStatus sb_field_new(uint64_t p, uint32_t degree, struct SbField **out);

/**
 * Extension degree `D`; 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
uint32_t sb_field_degree(const struct SbField *f);

/**
 * # Safety
 * `f` must be null or a handle from this library, not yet freed.
 */
void sb_field_free(struct SbField *f);

/**
 * `out = a * b`; all three are coefficient arrays of length `D`, lowest degree first.
 *
 * # Safety
 * `f` must be a live handle; `a`, `b` readable and `out` writable for `D` values.
 */
enum SbStatus sb_field_mul(const struct SbField *f,
                           const uint64_t *a,
                           const uint64_t *b,
                           uint64_t *out);

/**
 * `out = a^-1`.
 *
 * # Safety
 * `f` must be a live handle; `a` readable and `out` writable for `D` values.
 */
enum SbStatus sb_field_inv(const struct SbField *f, const uint64_t *a, uint64_t *out);

/**
 * `out = a^(p^e)`.
 *
 * # Safety
 * `f` must be a live handle; `a` readable and `out` writable for `D` values.
 */
enum SbStatus sb_field_frobenius(const struct SbField *f,
                                 const uint64_t *a,
                                 uint32_t e,
                                 uint64_t *out);

/**
 * Transversal subspace for `{field, point, subspaces}`; the result holds the echelon rows.
 *
 * # Safety
 * `input` must be a NUL-terminated string; `out` must be writable.
 */
enum SbStatus sb_transversal(const char *input, char **out);

/**
 * Runs a property suite (`span`, `prop14`, `thm2`, `lemma17`, `brauer-laws`)
 * with a JSON configuration; `passed` is set to 1 iff every check held.
 *
 * # Safety
 * `target` and `config` must be NUL-terminated strings; `passed` and `report` must be writable.
 */
enum SbStatus sb_verify(const char *target, const char *config, int32_t *passed, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SB_FFI_H */

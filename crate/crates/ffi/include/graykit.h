#ifndef GRAYKIT_H
#define GRAYKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result of every fallible call.
 */
typedef enum GkStatus {
  GK_STATUS_OK = 0,
  GK_STATUS_NULL_POINTER = 1,
  GK_STATUS_INVALID_UTF8 = 2,
  GK_STATUS_PARSE = 3,
  GK_STATUS_DEGREE = 4,
  GK_STATUS_MODE_MISMATCH = 5,
  GK_STATUS_NOT_IN_DOMAIN = 6,
  GK_STATUS_STEP_OUT_OF_RANGE = 7,
  GK_STATUS_INVALID_ARGUMENT = 8,
  GK_STATUS_PANIC = 9,
} GkStatus;

typedef enum GkStructure {
  GK_STRUCTURE_OMEGA = 0,
  GK_STRUCTURE_PSI_PLUS = 1,
  GK_STRUCTURE_PSI_MINUS = 2,
  GK_STRUCTURE_VOLUME = 3,
} GkStructure;

typedef enum GkMode {
  GK_MODE_EXACT = 0,
  GK_MODE_FLOAT = 1,
} GkMode;

typedef enum GkDecomposition {
  GK_DECOMPOSITION_TWO_FORM = 0,
  GK_DECOMPOSITION_THREE_FORM = 1,
  GK_DECOMPOSITION_ANTI_ENDO = 2,
} GkDecomposition;

typedef enum GkS6Suite {
  GK_S6_SUITE_GRAY = 0,
  GK_S6_SUITE_SPECTRAL = 1,
  GK_S6_SUITE_LINEARIZED = 2,
  GK_S6_SUITE_CL = 3,
  GK_S6_SUITE_ALL = 4,
} GkS6Suite;

/*
 Opaque form handle.
 */
typedef struct GkForm GkForm;

/*
 Message of the last failed call on this thread, or NULL. The pointer stays
 valid until the next call into the library from the same thread.
 */
const char *gk_last_error(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library, not yet freed.
 */
void gk_string_free(char *s);

/*
 # Safety
 `form` must be NULL or a handle returned by this library, not yet freed.
 */
void gk_form_free(struct GkForm *form);

/*
 Parses `{"mode": "exact"|"float", "terms": [{"blade": "e135", "coeff": ...}]}`.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum GkStatus gk_form_parse(const char *json, struct GkForm **out);

/*
 One of the standard structure forms.

 # Safety
 `out` must be writable.
 */
enum GkStatus gk_form_structure(enum GkStructure which, enum GkMode mode, struct GkForm **out);

/*
 # Safety
 `form` must be a live handle; `out` must be writable. Free the result
 with `gk_string_free`.
 */
enum GkStatus gk_form_to_json(const struct GkForm *form, char **out);

/*
 # Safety
 `form` must be a live handle; `out` must be writable.
 */
enum GkStatus gk_form_mode(const struct GkForm *form, enum GkMode *out);

/*
 Degree of a homogeneous form; the zero form reports 0. Mixed forms fail
 with `Degree`.

 # Safety
 `form` must be a live handle; `out` must be writable.
 */
enum GkStatus gk_form_degree(const struct GkForm *form, int *out);

/*
 # Safety
 `a`, `b` must be live handles; `out` must be writable.
 */
enum GkStatus gk_form_wedge(const struct GkForm *a, const struct GkForm *b, struct GkForm **out);

/*
 # Safety
 `a`, `b` must be live handles; `out` must be writable.
 */
enum GkStatus gk_form_add(const struct GkForm *a, const struct GkForm *b, struct GkForm **out);

/*
 Hodge star; the input must be homogeneous.

 # Safety
 `form` must be a live handle; `out` must be writable.
 */
enum GkStatus gk_form_hodge(const struct GkForm *form, struct GkForm **out);

/*
 The contraction Λ with ω.

 # Safety
 `form` must be a live handle; `out` must be writable.
 */
enum GkStatus gk_form_lambda(const struct GkForm *form, struct GkForm **out);

/*
 Interior product `x ⌟ form` with `x` given by six doubles. For exact forms
 each double is converted to the rational it represents exactly.

 # Safety
 `form` must be a live handle, `x` must point to six readable doubles and
 `out` must be writable.
 */
enum GkStatus gk_form_contract(const struct GkForm *form, const double *x, struct GkForm **out);

/*
 `⟨a, b⟩`, converted to double for exact forms.

 # Safety
 `a`, `b` must be live handles; `out` must be writable.
 */
enum GkStatus gk_form_inner(const struct GkForm *a, const struct GkForm *b, double *out);

/*
 Decomposes a JSON 2-form, 3-form or `{"mode", "endo": [36 entries]}`
 into its irreducible parts, returned as JSON.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum GkStatus gk_decompose_json(enum GkDecomposition kind, const char *json, char **out);

/*
 Runs the algebra identity suite; writes the report JSON and whether every
 check passed.

 # Safety
 `out` and `passed` must be writable.
 */
enum GkStatus gk_verify_algebra(enum GkMode mode,
                                size_t trials,
                                uint64_t seed,
                                char **out,
                                bool *passed);

/*
 Runs a six-sphere suite at step `h`; writes the report JSON and whether
 every check passed.

 # Safety
 `out` and `passed` must be writable.
 */
enum GkStatus gk_verify_s6(enum GkS6Suite suite,
                           size_t samples,
                           double h,
                           uint64_t seed,
                           char **out,
                           bool *passed);

#endif  /* GRAYKIT_H */

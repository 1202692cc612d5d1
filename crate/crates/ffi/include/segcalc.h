#ifndef SEGCALC_H
#define SEGCALC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum SegcalcStatus {
  SEGCALC_STATUS_OK = 0,
  SEGCALC_STATUS_NULL_POINTER = 1,
  SEGCALC_STATUS_INVALID_UTF8 = 2,
  SEGCALC_STATUS_PARSE_ERROR = 3,
  SEGCALC_STATUS_NOT_DECIDABLE = 4,
  SEGCALC_STATUS_RANK_ORDER = 5,
  SEGCALC_STATUS_OUT_OF_RANGE = 6,
  SEGCALC_STATUS_NOT_LINKED = 7,
  SEGCALC_STATUS_INVALID_ARGUMENT = 8,
  SEGCALC_STATUS_UNKNOWN_SUITE = 9,
  SEGCALC_STATUS_PANIC = 10,
} SegcalcStatus;

// An element of the Grothendieck group.
typedef struct SegcalcClass SegcalcClass;

// A canonical representation key.
typedef struct SegcalcRep SegcalcRep;

// The outcome of a theta-lift computation.
typedef struct SegcalcTheta SegcalcTheta;

// Message of the last failed call on this thread; empty if none. Valid until
// the next failing call on the same thread.
const char *segcalc_last_error(void);

// Library version as a static NUL-terminated string.
const char *segcalc_version(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a string produced by this library and not yet freed.
void segcalc_string_free(char *s);

// Parses a representation expression such as `"char(2,0)"`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum SegcalcStatus segcalc_rep_parse(const char *text, struct SegcalcRep **out);

// # Safety
// `rep` must be null or a handle from this library not yet freed.
void segcalc_rep_free(struct SegcalcRep *rep);

// Rank `n` of the group `GL_n` the representation lives on; 0 for a null handle.
//
// # Safety
// `rep` must be null or a valid handle.
uint32_t segcalc_rep_degree(const struct SegcalcRep *rep);

// Renders a representation as text or JSON.
//
// # Safety
// `rep` must be a valid handle; `out` must be writable.
enum SegcalcStatus segcalc_rep_render(const struct SegcalcRep *rep, bool json, char **out);

// Class of the induced product `a × b`.
//
// # Safety
// `a`, `b` must be valid handles; `out` must be writable.
enum SegcalcStatus segcalc_product(const struct SegcalcRep *a,
                                   const struct SegcalcRep *b,
                                   struct SegcalcClass **out);

// Semisimplification of a representation's class.
//
// # Safety
// `rep` must be a valid handle; `out` must be writable.
enum SegcalcStatus segcalc_ss(const struct SegcalcRep *rep, struct SegcalcClass **out);

// # Safety
// `class` must be null or a handle from this library not yet freed.
void segcalc_class_free(struct SegcalcClass *class_);

// Number of distinct irreducible terms in a class.
//
// # Safety
// `class` must be null or a valid handle.
uintptr_t segcalc_class_len(const struct SegcalcClass *class_);

// Renders a class as text or JSON.
//
// # Safety
// `class` must be a valid handle; `out` must be writable.
enum SegcalcStatus segcalc_class_render(const struct SegcalcClass *class_, bool json, char **out);

// Order of the real pole of `L(s, π)` at `s = s0_twice / 2`.
//
// # Safety
// `rep` must be a valid handle; `out` must be writable.
enum SegcalcStatus segcalc_pole_order(const struct SegcalcRep *rep,
                                      int64_t s0_twice,
                                      uint32_t *out);

// Whether `L(s, π)` and `L(s, π^∨)` have poles at `s = (1 + m - n) / 2`.
//
// # Safety
// `rep` must be a valid handle; `pole_pi` and `pole_dual` must be writable.
enum SegcalcStatus segcalc_both_pole(uint32_t n,
                                     uint32_t m,
                                     const struct SegcalcRep *rep,
                                     bool *pole_pi,
                                     bool *pole_dual);

// Big theta lift of `π` from `GL_n` to `GL_m`, `n ≤ m`.
//
// # Safety
// `rep` must be a valid handle; `out` must be writable.
enum SegcalcStatus segcalc_theta(uint32_t n,
                                 uint32_t m,
                                 const struct SegcalcRep *rep,
                                 struct SegcalcTheta **out);

// Ext groups of the Weil representation against `|det_n|^(x_twice / 2)`.
//
// # Safety
// `out` must be writable.
enum SegcalcStatus segcalc_ext_character(uint32_t n,
                                         uint32_t m,
                                         int64_t x_twice,
                                         struct SegcalcTheta **out);

// # Safety
// `theta` must be null or a handle from this library not yet freed.
void segcalc_theta_free(struct SegcalcTheta *theta);

// 1 if the lift is irreducible, 0 if not, -1 if unknown or the handle is null.
//
// # Safety
// `theta` must be null or a valid handle.
int32_t segcalc_theta_irreducible(const struct SegcalcTheta *theta);

// Class of the lift; fails with `NotDecidable` when it is not known.
//
// # Safety
// `theta` must be a valid handle; `out` must be writable.
enum SegcalcStatus segcalc_theta_class(const struct SegcalcTheta *theta, struct SegcalcClass **out);

// Class of `Ext^degree`; zero beyond the known degrees.
//
// # Safety
// `theta` must be a valid handle; `out` must be writable.
enum SegcalcStatus segcalc_theta_ext(const struct SegcalcTheta *theta,
                                     uint32_t degree,
                                     struct SegcalcClass **out);

// Renders the whole result as text or JSON.
//
// # Safety
// `theta` must be a valid handle; `out` must be writable.
enum SegcalcStatus segcalc_theta_render(const struct SegcalcTheta *theta, bool json, char **out);

// Whether the Weil representation is projective.
bool segcalc_is_projective(uint32_t n, uint32_t m);

// Upper bound for the projective dimension of the Weil representation.
//
// # Safety
// `out` must be writable.
enum SegcalcStatus segcalc_proj_dim_bound(uint32_t n, uint32_t m, uint32_t *out);

// Runs a verification suite with its default parameters, overriding the seed
// and (when non-zero) the sample count. Writes the JSON report and verdict.
//
// # Safety
// `suite` must be a NUL-terminated string; `report` and `passed` must be writable.
enum SegcalcStatus segcalc_verify(const char *suite,
                                  uint64_t seed,
                                  uint32_t samples,
                                  char **report,
                                  bool *passed);

#endif  /* SEGCALC_H */

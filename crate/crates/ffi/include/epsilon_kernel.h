#ifndef EPSILON_KERNEL_H
#define EPSILON_KERNEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Translation mode for [`ek_formula_translate`].
 */
typedef enum EkMode {
  EK_MODE_CLASSICAL = 0,
  EK_MODE_INTUITIONISTIC = 1,
} EkMode;

/**
 * Status codes.
 */
typedef enum EkStatus {
  EK_STATUS_OK = 0,
  EK_STATUS_NULL_POINTER = 1,
  EK_STATUS_INVALID_UTF8 = 2,
  EK_STATUS_PARSE = 3,
  EK_STATUS_TRANSFORM = 4,
  /**
   * The substitution solver hit its iteration bound.
   */
  EK_STATUS_NON_TERMINATION = 5,
  /**
   * Any other solver failure, such as a rank above 2.
   */
  EK_STATUS_SOLVE = 6,
  EK_STATUS_INVALID_ARGUMENT = 7,
  EK_STATUS_PANIC = 8,
} EkStatus;

/**
 * A parsed formula.
 */
typedef struct EkFormula EkFormula;

/**
 * A parsed set of critical formulas.
 */
typedef struct EkProblem EkProblem;

/**
 * Message for the last failure on this thread, or null. Owned by the
 * library; valid until the next call.
 */
const char *ek_last_error(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ek_string_free(char *s);

/**
 * Parse `src` into a new formula handle.
 *
 * # Safety
 * `src` must be a nul-terminated string; `out` must be writable.
 */
enum EkStatus ek_formula_parse(const char *src, struct EkFormula **out);

/**
 * Release a formula handle. Null is ignored.
 *
 * # Safety
 * `f` must come from this library and not have been freed.
 */
void ek_formula_free(struct EkFormula *f);

/**
 * Print a formula, ASCII when `unicode` is 0.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum EkStatus ek_formula_print(const struct EkFormula *f, int unicode, char **out);

/**
 * Replace quantifiers by ε-terms. The result is a new handle.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum EkStatus ek_formula_translate(const struct EkFormula *f,
                                   enum EkMode mode,
                                   struct EkFormula **out);

/**
 * Stores 1 in `out` when `a` and `b` are equal up to bound-variable names.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum EkStatus ek_formula_equal(const struct EkFormula *a, const struct EkFormula *b, int *out);

/**
 * Parse a critical-formula problem (the `.prob` format).
 *
 * # Safety
 * `src` must be a nul-terminated string; `out` must be writable.
 */
enum EkStatus ek_problem_parse(const char *src, struct EkProblem **out);

/**
 * Release a problem handle. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void ek_problem_free(struct EkProblem *p);

/**
 * Run the substitution solver with search cap `cap`. A `max_iter` of 0
 * selects the default bound. On success `resolved` is set and `json_out`
 * receives the final assignment with its repair history.
 *
 * # Safety
 * `p` must be a live handle; `resolved` and `json_out` must be writable.
 */
enum EkStatus ek_problem_solve(const struct EkProblem *p,
                               uint64_t cap,
                               size_t max_iter,
                               int *resolved,
                               char **json_out);

/**
 * Run the command-line tool on `argv[0..argc]` (without a program name).
 * Standard output and error are captured into `out` and `err`;
 * `exit_code` receives the status the binary would exit with.
 *
 * # Safety
 * `argv` must hold `argc` nul-terminated strings; the out pointers must be
 * writable.
 */
enum EkStatus ek_cli_run(const char *const *argv,
                         size_t argc,
                         int *exit_code,
                         char **out,
                         char **err);

#endif  /* EPSILON_KERNEL_H */

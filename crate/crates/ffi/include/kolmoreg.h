#ifndef KOLMOREG_H
#define KOLMOREG_H

/* Generated by cbindgen from the kolmoreg-ffi crate; regenerate with `cargo build -p kolmoreg-ffi --features ffi-headers`. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum KolmoregStatus {
  KOLMOREG_STATUS_OK = 0,
  /**
   * A required pointer was null or an argument was malformed.
   */
  KOLMOREG_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Input failed validation (JSON schema, structural or domain error).
   */
  KOLMOREG_STATUS_VALIDATION_ERROR = 2,
  /**
   * The lattice point budget would be exceeded.
   */
  KOLMOREG_STATUS_BUDGET_EXCEEDED = 3,
  /**
   * I/O failure or internal panic.
   */
  KOLMOREG_STATUS_RUNTIME_ERROR = 4,
} KolmoregStatus;

/**
 * Opaque drift-matrix handle.
 */
typedef struct KolmoregStructure KolmoregStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * ABI revision of this header; bumped on breaking changes.
 */
uint32_t kolmoreg_abi_version(void);

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *kolmoreg_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a `kolmoreg_*` call and not freed before.
 */
void kolmoreg_string_free(char *s);

/**
 * Parse a structure from its JSON wire form
 * `{"dims": [m0, m1, ...], "blocks": [[["p/q", ...], ...], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum KolmoregStatus kolmoreg_structure_from_json(const char *json, struct KolmoregStructure **out);

/**
 * Release a structure handle.
 *
 * # Safety
 * `s` must be null or a handle from `kolmoreg_structure_from_json`.
 */
void kolmoreg_structure_free(struct KolmoregStructure *s);

/**
 * Serialize a structure back to canonical JSON; round-trips bit-exactly.
 *
 * # Safety
 * `s` and `out_json` must be valid pointers.
 */
enum KolmoregStatus kolmoreg_structure_to_json(const struct KolmoregStructure *s, char **out_json);

/**
 * Total space dimension `N`.
 *
 * # Safety
 * `s` and `out_n` must be valid pointers.
 */
enum KolmoregStatus kolmoreg_structure_dimension(const struct KolmoregStructure *s, size_t *out_n);

/**
 * Run the structural checks. `out_valid` receives the verdict; when the
 * structure is invalid, `kolmoreg_last_error` names the first failed check.
 *
 * # Safety
 * `s` and `out_valid` must be valid pointers.
 */
enum KolmoregStatus kolmoreg_structure_validate(const struct KolmoregStructure *s, bool *out_valid);

/**
 * Rank of the controllability matrix; equals `N` exactly when the operator
 * is hypoelliptic.
 *
 * # Safety
 * `s` and `out_rank` must be valid pointers.
 */
enum KolmoregStatus kolmoreg_structure_kalman_rank(const struct KolmoregStructure *s,
                                                   size_t *out_rank);

/**
 * Anisotropic dilation weights per variable group plus the homogeneous
 * dimension. `weights` receives up to `capacity` entries; `out_len` gets
 * the group count.
 *
 * # Safety
 * `s`, `weights`, `out_len` and `out_q` must be valid; `weights` must point
 * to at least `capacity` writable entries.
 */
enum KolmoregStatus kolmoreg_dilation_weights(const struct KolmoregStructure *s,
                                              uint32_t *weights,
                                              size_t capacity,
                                              size_t *out_len,
                                              uint64_t *out_q);

/**
 * The Sobolev gain exponent `s = beta / (1 - gamma + beta)` in exact
 * rational arithmetic; inputs and output are `"p/q"` strings.
 *
 * # Safety
 * `beta` and `gamma` must be NUL-terminated strings; `out_s` must be valid.
 */
enum KolmoregStatus kolmoreg_sobolev_exponent(const char *beta, const char *gamma, char **out_s);

/**
 * Execute a full run configuration (same JSON schema as the CLI) and write
 * `<out_prefix>.csv` / `<out_prefix>.json`.
 *
 * Returns the CLI exit convention: 0 success, 2 validation failure,
 * 3 budget overrun, 1 I/O or internal failure. `budget = 0` keeps the
 * configured default.
 *
 * # Safety
 * `config_json` and `out_prefix` must be NUL-terminated strings.
 */
int32_t kolmoreg_run_json(const char *config_json, const char *out_prefix, uint64_t budget);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KOLMOREG_H */

#ifndef JKPENCIL_H
#define JKPENCIL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero error values match the CLI exit codes.
 */
typedef enum JkStatus {
  JK_STATUS_OK = 0,
  JK_STATUS_NULL_ARGUMENT = 1,
  JK_STATUS_PARSE = 2,
  JK_STATUS_STRUCTURAL = 3,
  JK_STATUS_CHECK = 4,
  JK_STATUS_PANIC = 5,
} JkStatus;

/**
 * Opaque pencil handle.
 */
typedef struct JkPencil JkPencil;

/**
 * Parses a pencil JSON document (`{"n", "A", "B"}`) into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum JkStatus jk_pencil_from_json(const char *json, struct JkPencil **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `p` must come from `jk_pencil_from_json` and not be used afterwards.
 */
void jk_pencil_free(struct JkPencil *p);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum JkStatus jk_pencil_dim(const struct JkPencil *p, size_t *out);

/**
 * Rank of the generic form.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum JkStatus jk_pencil_rank(const struct JkPencil *p, size_t *out);

/**
 * Invariants report as JSON.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum JkStatus jk_pencil_invariants_json(const struct JkPencil *p, char **out);

/**
 * Core subspace as `{"ambient", "basis"}` JSON.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum JkStatus jk_pencil_core_json(const struct JkPencil *p, char **out);

/**
 * Mantle subspace as `{"ambient", "basis"}` JSON.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum JkStatus jk_pencil_mantle_json(const struct JkPencil *p, char **out);

/**
 * Bi-Lagrangian completion trace as JSON, starting from the subspace in
 * `from_json`, or from the core when it is null.
 *
 * # Safety
 * `p` must be a live handle, `from_json` null or NUL-terminated, `out`
 * writable.
 */
enum JkStatus jk_pencil_complete_json(const struct JkPencil *p, const char *from_json, char **out);

/**
 * Sets `*pass` to 1 when the vector (a JSON array) lies in the image of the
 * generic form, 0 otherwise.
 *
 * # Safety
 * `p` must be a live handle, `vector_json` NUL-terminated, `pass` writable.
 */
enum JkStatus jk_pencil_obstruct(const struct JkPencil *p, const char *vector_json, int *pass);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void jk_string_free(char *s);

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *jk_last_error_message(void);

#endif  /* JKPENCIL_H */

#ifndef UNIBENCH_H
#define UNIBENCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define UB_OK 0

#define UB_ERR_NULL 1

#define UB_ERR_UTF8 2

#define UB_ERR_UNKNOWN_CIPHER 3

#define UB_ERR_KEY_LENGTH 4

#define UB_ERR_BLOCK_LENGTH 5

#define UB_ERR_NON_POSITIVE 6

#define UB_ERR_INGEST 7

#define UB_ERR_COMPOSE 8

#define UB_ERR_PANIC 99

/**
 * Opaque block cipher handle.
 */
typedef struct UbCipher UbCipher;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next `ub_*` call on the same thread.
 */
const char *ub_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ub_version(void);

/**
 * Creates a cipher handle.
 *
 * # Safety
 * `name` must be a NUL-terminated string, `key` must point to `key_len`
 * readable bytes and `out` must be valid for writes.
 */
int ub_cipher_new(const char *name, const uint8_t *key, size_t key_len, struct UbCipher **out);

/**
 * Block size in bytes, or 0 for a null handle.
 *
 * # Safety
 * `cipher` must be null or a live handle from [`ub_cipher_new`].
 */
size_t ub_cipher_block_bytes(const struct UbCipher *cipher);

/**
 * Encrypts `len` bytes in place, block by block. `len` must be a multiple of
 * the block size.
 *
 * # Safety
 * `cipher` must be a live handle and `data` must point to `len` writable
 * bytes.
 */
int ub_cipher_encrypt(const struct UbCipher *cipher, uint8_t *data, size_t len);

/**
 * Decrypts `len` bytes in place; the inverse of [`ub_cipher_encrypt`].
 *
 * # Safety
 * Same as [`ub_cipher_encrypt`].
 */
int ub_cipher_decrypt(const struct UbCipher *cipher, uint8_t *data, size_t len);

/**
 * Releases a cipher handle. Null is ignored.
 *
 * # Safety
 * `cipher` must be null or a handle from [`ub_cipher_new`] not yet freed.
 */
void ub_cipher_free(struct UbCipher *cipher);

/**
 * Ratio of `value` against `reference`, oriented so that above 1.0 is
 * better: `value / reference` when `higher_is_better` is non-zero, otherwise
 * `reference / value`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
int ub_normalize_ratio(double value, double reference, int higher_is_better, double *out);

/**
 * Composes a canonical measurement document against `reference` using the
 * built-in ten-indicator catalog and returns the results document as JSON.
 *
 * # Safety
 * `canonical_json` and `reference` must be NUL-terminated strings and
 * `out_json` must be valid for writes. Free the result with
 * [`ub_string_free`].
 */
int ub_compose_json(const char *canonical_json, const char *reference, char **out_json);

/**
 * Ranking CSV for a results document produced by [`ub_compose_json`].
 *
 * # Safety
 * `results_json` must be a NUL-terminated string and `out_csv` valid for
 * writes. Free the result with [`ub_string_free`].
 */
int ub_ranking_csv(const char *results_json, char **out_csv);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ub_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNIBENCH_H */

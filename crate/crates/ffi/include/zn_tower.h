#ifndef ZN_TOWER_H
#define ZN_TOWER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZnStatus {
  ZnStatus_Ok = 0,
  ZnStatus_NullPointer = 1,
  ZnStatus_InvalidUtf8 = 2,
  ZnStatus_Parse = 3,
  ZnStatus_UnknownSymbol = 4,
  ZnStatus_Rejected = 5,
  ZnStatus_TowerFile = 6,
  ZnStatus_Undefined = 7,
  ZnStatus_Panic = 99,
} ZnStatus;

/**
 * Opaque element handle. Only valid together with the tower that made it.
 */
typedef struct ZnElement ZnElement;

/**
 * Opaque tower handle.
 */
typedef struct ZnTower ZnTower;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * owned by the library and valid until the next failing call.
 */
const char *zn_last_error(void);

/**
 * Build a tower from its JSON description.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum ZnStatus zn_tower_load_json(const char *json, struct ZnTower **out);

/**
 * Tower for the free group on comma separated generator names.
 *
 * # Safety
 * `names` must be a NUL-terminated string; `out` must be writable.
 */
enum ZnStatus zn_tower_free_group(const char *names, struct ZnTower **out);

/**
 * # Safety
 * `t` must be NULL or a handle from this library, freed at most once.
 */
void zn_tower_free(struct ZnTower *t);

/**
 * Rank n of the length group Z^n.
 *
 * # Safety
 * `t` must be a live tower handle.
 */
uintptr_t zn_tower_rank(const struct ZnTower *t);

/**
 * Parse an expression such as `a^2*z*b^-1` into normal form.
 *
 * # Safety
 * `t` must be a live tower handle, `src` NUL-terminated, `out` writable.
 */
enum ZnStatus zn_element_parse(const struct ZnTower *t, const char *src, struct ZnElement **out);

/**
 * # Safety
 * `e` must be NULL or an element handle, freed at most once.
 */
void zn_element_free(struct ZnElement *e);

/**
 * Render the normal form. Release the string with [`zn_string_free`].
 *
 * # Safety
 * Handles must be live; `out` writable.
 */
enum ZnStatus zn_element_render(const struct ZnTower *t, const struct ZnElement *e, char **out);

/**
 * # Safety
 * Handles must be live; `out` writable.
 */
enum ZnStatus zn_element_mul(const struct ZnTower *t,
                             const struct ZnElement *a,
                             const struct ZnElement *b,
                             struct ZnElement **out);

/**
 * # Safety
 * Handles must be live; `out` writable.
 */
enum ZnStatus zn_element_inv(const struct ZnTower *t,
                             const struct ZnElement *a,
                             struct ZnElement **out);

/**
 * Writes 1 to `out` when the elements are equal in the group, else 0.
 *
 * # Safety
 * Handles must be live; `out` writable.
 */
enum ZnStatus zn_element_equals(const struct ZnTower *t,
                                const struct ZnElement *a,
                                const struct ZnElement *b,
                                int32_t *out);

/**
 * Copy the length coordinates (bottom first) into `buf`, which must hold
 * `zn_tower_rank` entries; `cap` is its capacity.
 *
 * # Safety
 * Handles must be live; `buf` must have room for `cap` values.
 */
enum ZnStatus zn_element_length(const struct ZnTower *t,
                                const struct ZnElement *e,
                                int64_t *buf,
                                uintptr_t cap);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void zn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZN_TOWER_H */

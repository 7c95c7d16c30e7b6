#ifndef SYLOW2_H
#define SYLOW2_H

/* Generated by cbindgen from the sylow2-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define SYLOW2_OK 0

/**
 * Null pointer, unknown enum value, or invalid parameters (bad prime,
 * exponent, kernel level, oversized modulus).
 */
#define SYLOW2_ERR_INVALID_ARGUMENT -1

/**
 * The computation would exceed the element or lattice budget.
 */
#define SYLOW2_ERR_BUDGET -2

/**
 * A matrix with non-unit determinant where a unit was required.
 */
#define SYLOW2_ERR_SINGULAR -3

/**
 * An element outside the group it was claimed to belong to.
 */
#define SYLOW2_ERR_NOT_MEMBER -4

/**
 * A structural precondition failed (normality, containment, actor order).
 */
#define SYLOW2_ERR_STRUCTURE -5

/**
 * An internal verification failed or a panic was caught.
 */
#define SYLOW2_ERR_INTERNAL -6

/**
 * Group kinds for sylow2_group_new.
 */
#define SYLOW2_KIND_GL 0

#define SYLOW2_KIND_SL 1

#define SYLOW2_KIND_SYLOW_GL 2

#define SYLOW2_KIND_SYLOW_SL 3

#define SYLOW2_KIND_KERNEL_GL 4

#define SYLOW2_KIND_KERNEL_SL 5

/**
 * Family selector for verify/e2/fusion entry points.
 */
#define SYLOW2_FAMILY_SL 0

#define SYLOW2_FAMILY_GL 1

/**
 * Properties for sylow2_verify.
 */
#define SYLOW2_PROP_ELEMENTARY_ABELIAN 0

#define SYLOW2_PROP_ABELIAN 1

#define SYLOW2_PROP_POWERFUL 2

#define SYLOW2_PROP_OMEGA_EXTENDABLE 3

#define SYLOW2_PROP_PTH_ROOTS 4

/**
 * Opaque arithmetic context (odd prime p, exponent n).
 */
typedef struct Sylow2Ctx Sylow2Ctx;

/**
 * Opaque enumerated matrix group.
 */
typedef struct Sylow2Group Sylow2Group;

/**
 * Create an arithmetic context for the odd prime `p` and exponent `n`.
 *
 * # Safety
 * `out` must be a valid pointer; the result must be freed with
 * `sylow2_ctx_free`.
 */
int32_t sylow2_ctx_new(uint64_t p,
                       uint32_t n,
                       Sylow2Ctx **out);

/**
 * # Safety
 * `ctx` must come from `sylow2_ctx_new` and not be freed twice.
 */
void sylow2_ctx_free(Sylow2Ctx *ctx);

/**
 * Enumerate one of the named groups. `level` is the kernel level for the
 * kernel kinds and ignored otherwise; `budget` caps the element count.
 *
 * # Safety
 * `ctx` must be a live context handle and `out` a valid pointer; the
 * result must be freed with `sylow2_group_free`.
 */
int32_t sylow2_group_new(const Sylow2Ctx *ctx,
                         int32_t kind,
                         uint32_t level,
                         uint64_t budget,
                         Sylow2Group **out);

/**
 * # Safety
 * `group` must come from `sylow2_group_new` and not be freed twice.
 */
void sylow2_group_free(Sylow2Group *group);

/**
 * # Safety
 * `group` must be a live group handle; `out` must be valid.
 */
int32_t sylow2_group_order(const Sylow2Group *group,
                           uint64_t *out);

/**
 * Multiplicative order of the matrix with row-major `entries`, which must
 * be an element of the group.
 *
 * # Safety
 * `group` must be live; `entries` must point to 4 u64 values; `out` must
 * be valid.
 */
int32_t sylow2_element_order(const Sylow2Group *group,
                             const uint64_t *entries,
                             uint64_t *out);

/**
 * Check a structural property of a kernel family at (p, n). `holds`
 * receives 1 or 0; when `json_out` is non-null it receives the full report
 * (free with `sylow2_string_free`).
 *
 * # Safety
 * `holds` must be valid; `json_out` may be null.
 */
int32_t sylow2_verify(uint64_t p,
                      uint32_t n,
                      int32_t property,
                      int32_t family,
                      uint32_t level,
                      uint64_t budget,
                      int32_t *holds,
                      char **json_out);

/**
 * E2 table of the reduction-mod-p extension as a JSON string.
 *
 * # Safety
 * `out` must be valid; the string must be freed with `sylow2_string_free`.
 */
int32_t sylow2_e2_json(uint64_t p,
                       uint32_t n,
                       int32_t family,
                       uint32_t cap_i,
                       uint32_t cap_j,
                       uint64_t budget,
                       char **out);

/**
 * Full fusion / stable-elements ingredient report as a JSON string.
 *
 * # Safety
 * `out` must be valid; the string must be freed with `sylow2_string_free`.
 */
int32_t sylow2_fusion_json(uint64_t p,
                           uint32_t n,
                           int32_t family,
                           int32_t containment_filter,
                           uint64_t budget,
                           uint64_t lattice_budget,
                           uint32_t cap_degree,
                           uint32_t cap_i,
                           uint32_t cap_j,
                           char **out);

/**
 * Free a string handed out by this library.
 *
 * # Safety
 * `s` must come from a sylow2_* function and not be freed twice.
 */
void sylow2_string_free(char *s);

/**
 * Static name for an error code; never null.
 */
const char *sylow2_error_name(int32_t code);

#endif /* SYLOW2_H */

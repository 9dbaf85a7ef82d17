#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KcStatus {
  KC_STATUS_OK = 0,
  KC_STATUS_NULL_POINTER = 1,
  KC_STATUS_INVALID_PARAMETER = 2,
  KC_STATUS_SINGULAR_POINT = 3,
  KC_STATUS_SINGULAR_METRIC = 4,
  KC_STATUS_IO = 5,
  KC_STATUS_PARSE = 6,
  KC_STATUS_BUFFER_TOO_SMALL = 7,
  KC_STATUS_INTERNAL = 8,
} KcStatus;

/**
 * Values accepted by the `kind` argument of [`kc_surface_new`].
 */
typedef enum KcSurfaceKind {
  KC_SURFACE_KIND_CORAL = 0,
  KC_SURFACE_KIND_LETTUCE = 1,
  KC_SURFACE_KIND_PARABOLOID = 2,
} KcSurfaceKind;

/**
 * Values accepted by `mode` arguments.
 */
typedef enum KcPatternMode {
  KC_PATTERN_MODE_EVEN = 0,
  KC_PATTERN_MODE_BLOCK = 1,
} KcPatternMode;

/**
 * Opaque mesh handle.
 */
typedef struct KcMesh KcMesh;

/**
 * Opaque row plan handle.
 */
typedef struct KcRowPlan KcRowPlan;

/**
 * Opaque surface handle.
 */
typedef struct KcSurface KcSurface;

typedef struct KcVec3 {
  double x;
  double y;
  double z;
} KcVec3;

/**
 * Position and partial derivatives up to second order.
 */
typedef struct KcJet2 {
  struct KcVec3 p;
  struct KcVec3 ru;
  struct KcVec3 rv;
  struct KcVec3 ruu;
  struct KcVec3 ruv;
  struct KcVec3 rvv;
} KcJet2;

/**
 * Pointwise curvature summary. The `has_*` flags mark optional fields.
 */
typedef struct KcCurvature {
  double e;
  double f;
  double g;
  double l;
  double m;
  double n;
  struct KcVec3 normal;
  double k_forms;
  double k_paper;
  bool has_k_paper;
  double area_factor;
  bool has_area_factor;
  double mean;
  double k1;
  double k2;
} KcCurvature;

typedef struct KcPlannedRow {
  uint32_t radius;
  double length;
  uint64_t chains;
} KcPlannedRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *kc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *kc_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void kc_string_free(char *s);

/**
 * Creates a surface. `kind` takes a [`KcSurfaceKind`] value.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum KcStatus kc_surface_new(uint32_t kind, uint32_t n, struct KcSurface **out);

/**
 * # Safety
 * `s` must be null or a handle from [`kc_surface_new`] not yet freed.
 */
void kc_surface_free(struct KcSurface *s);

/**
 * # Safety
 * `s` must be a live handle and `out` valid for writes.
 */
enum KcStatus kc_surface_position(const struct KcSurface *s,
                                  double u,
                                  double v,
                                  struct KcVec3 *out);

/**
 * Closed-form jet at `(u, v)`.
 *
 * # Safety
 * `s` must be a live handle and `out` valid for writes.
 */
enum KcStatus kc_surface_jet(const struct KcSurface *s, double u, double v, struct KcJet2 *out);

/**
 * Fundamental forms and curvatures at a regular point.
 *
 * # Safety
 * `s` must be a live handle and `out` valid for writes.
 */
enum KcStatus kc_curvature(const struct KcSurface *s, double u, double v, struct KcCurvature *out);

/**
 * Closed-form coral curvature as published; finite on the axis.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum KcStatus kc_coral_curvature_paper(uint32_t n, double u, double v, double *out);

/**
 * Plans rows `r = 1..=max_radius` starting from `initial_chains`, with a
 * magic circle of `magic_chains` in the rendered instructions.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum KcStatus kc_plan_rows(uint64_t initial_chains,
                           uint32_t max_radius,
                           uint32_t magic_chains,
                           struct KcRowPlan **out);

/**
 * # Safety
 * `plan` must be null or a handle from [`kc_plan_rows`] not yet freed.
 */
void kc_row_plan_free(struct KcRowPlan *plan);

/**
 * Number of rows; 0 for a null handle.
 *
 * # Safety
 * `plan` must be null or a live handle.
 */
size_t kc_row_plan_len(const struct KcRowPlan *plan);

/**
 * # Safety
 * `plan` must be a live handle and `out` valid for writes.
 */
enum KcStatus kc_row_plan_row(const struct KcRowPlan *plan, size_t index, struct KcPlannedRow *out);

/**
 * Rendered instructions. Free the string with [`kc_string_free`].
 *
 * # Safety
 * `plan` must be a live handle and `out` valid for writes.
 */
enum KcStatus kc_row_plan_render(const struct KcRowPlan *plan, uint32_t mode, char **out);

/**
 * Per-chain multipliers taking `parent` chains to `target`.
 *
 * `*len` always receives the required length. If `buf` is null or
 * `capacity` is too small, nothing is copied and `BufferTooSmall` is
 * returned, so callers can size a buffer with a first call.
 *
 * # Safety
 * `len` must be valid for writes; `buf` must be null or valid for
 * `capacity` writes.
 */
enum KcStatus kc_distribute_multipliers(uint64_t parent,
                                        uint64_t target,
                                        uint32_t mode,
                                        uint32_t *buf,
                                        size_t capacity,
                                        size_t *len);

/**
 * Curvature-coloured mesh over `[u_min, u_max] × [v_min, v_max]`.
 *
 * # Safety
 * `s` must be a live handle and `out` valid for writes.
 */
enum KcStatus kc_mesh_tessellate(const struct KcSurface *s,
                                 double u_min,
                                 double u_max,
                                 double v_min,
                                 double v_max,
                                 size_t nu,
                                 size_t nv,
                                 bool wrap_v,
                                 struct KcMesh **out);

/**
 * # Safety
 * `mesh` must be null or a handle from [`kc_mesh_tessellate`] not yet freed.
 */
void kc_mesh_free(struct KcMesh *mesh);

/**
 * # Safety
 * `mesh` must be null or a live handle.
 */
size_t kc_mesh_vertex_count(const struct KcMesh *mesh);

/**
 * # Safety
 * `mesh` must be null or a live handle.
 */
size_t kc_mesh_triangle_count(const struct KcMesh *mesh);

/**
 * # Safety
 * `mesh` must be a live handle and `path` a NUL-terminated string.
 */
enum KcStatus kc_mesh_write_obj(const struct KcMesh *mesh, const char *path);

/**
 * # Safety
 * `mesh` must be a live handle and `path` a NUL-terminated string.
 */
enum KcStatus kc_mesh_write_ply(const struct KcMesh *mesh, const char *path);

/**
 * Runs the default cross-checks. `*passed` tells whether every hard check
 * passed; `*report`, if non-null, receives the report (JSON or text).
 *
 * # Safety
 * `passed` must be valid for writes; `report` must be null or valid for
 * writes.
 */
enum KcStatus kc_validate(bool json, bool *passed, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

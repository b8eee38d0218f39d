#ifndef DERANGEMENT_H
#define DERANGEMENT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DgStatus {
  DG_STATUS_OK = 0,
  DG_STATUS_NULL_POINTER = 1,
  DG_STATUS_INVALID_UTF8 = 2,
  DG_STATUS_INVALID_ARGUMENT = 3,
  DG_STATUS_PARSE = 4,
  DG_STATUS_CAP_EXCEEDED = 5,
  DG_STATUS_NOT_FOUND = 6,
  DG_STATUS_NOT_A_SUBGROUP = 7,
  DG_STATUS_IO = 8,
  DG_STATUS_PANIC = 9,
  DG_STATUS_OTHER = 10,
} DgStatus;

// Opaque handle to an enumerated permutation group.
typedef struct DgGroup DgGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *dg_last_error(void);

// Enumerates a built-in catalog group. `max_order` of 0 selects the default cap.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum DgStatus dg_group_builtin(const char *name, uintptr_t max_order, struct DgGroup **out);

// Enumerates the group generated by `generators`, a `;`-separated list of
// 1-based cycle strings such as `"(1 2 3 4);(1 2)"`.
//
// # Safety
// `generators` must be a NUL-terminated string and `out` a valid pointer.
enum DgStatus dg_group_from_generators(uintptr_t degree,
                                       const char *generators,
                                       uintptr_t max_order,
                                       struct DgGroup **out);

// Loads a `.grp` file.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum DgStatus dg_group_from_file(const char *path, uintptr_t max_order, struct DgGroup **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `group` must come from one of the constructors and not be freed twice.
void dg_group_free(struct DgGroup *group);

// # Safety
// `group` must be a live handle and `out` a valid pointer.
enum DgStatus dg_group_order(const struct DgGroup *group, uintptr_t *out);

// # Safety
// `group` must be a live handle and `out` a valid pointer.
enum DgStatus dg_group_degree(const struct DgGroup *group, uintptr_t *out);

// # Safety
// `group` must be a live handle and `out` a valid pointer.
enum DgStatus dg_is_transitive(const struct DgGroup *group, bool *out);

// Number of fixed-point-free elements.
//
// # Safety
// `group` must be a live handle and `out` a valid pointer.
enum DgStatus dg_derangement_count(const struct DgGroup *group, uintptr_t *out);

// Clique number of the derangement graph. `exact` is false when the
// search stopped at `node_budget` and `size` is only a lower bound.
//
// # Safety
// `group` must be a live handle; `size` and `exact` valid pointers.
enum DgStatus dg_clique_number(const struct DgGroup *group,
                               uintptr_t max_vertices,
                               uint64_t node_budget,
                               uintptr_t *size,
                               bool *exact);

// Independence number of the derangement graph.
//
// # Safety
// `group` must be a live handle; `size` and `exact` valid pointers.
enum DgStatus dg_coclique_number(const struct DgGroup *group,
                                 uintptr_t max_vertices,
                                 uint64_t node_budget,
                                 uintptr_t *size,
                                 bool *exact);

// Length of a longest normal imprimitivity series of a transitive group.
//
// # Safety
// `group` must be a live handle and `out` a valid pointer.
enum DgStatus dg_series_length(const struct DgGroup *group, uintptr_t *out);

// # Safety
// `group` must be a live handle and `out` a valid pointer.
enum DgStatus dg_is_quasiprimitive(const struct DgGroup *group, bool *out);

// Compares the subgroups generated by `u` and `u_prime` (same format as
// [`dg_group_from_generators`]; an empty string means the trivial subgroup).
//
// # Safety
// `group` must be a live handle; strings NUL-terminated; out pointers valid.
enum DgStatus dg_kronecker_equivalent(const struct DgGroup *group,
                                      const char *u,
                                      const char *u_prime,
                                      bool *equivalent,
                                      bool *conjugate);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DERANGEMENT_H */

#ifndef NCD_H
#define NCD_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NcdStatus {
  NCD_STATUS_OK = 0,
  NCD_STATUS_NULL_POINTER = 1,
  NCD_STATUS_MALFORMED = 2,
  NCD_STATUS_LIMIT_EXCEEDED = 3,
  NCD_STATUS_INTERNAL = 4,
  NCD_STATUS_OUT_OF_RANGE = 5,
  NCD_STATUS_NO_PATH = 6,
  NCD_STATUS_BUFFER_TOO_SMALL = 7,
  /**
   * Distances and paths were asked of a rejected instance.
   */
  NCD_STATUS_NOT_NEARLY_CONSERVATIVE = 8,
  /**
   * A witness was asked of an accepted instance.
   */
  NCD_STATUS_NO_WITNESS = 9,
} NcdStatus;

/**
 * Arcs and edges collected before solving.
 */
typedef struct NcdInstance NcdInstance;

/**
 * Result of [`ncd_solve`]: either distances and paths or a witness cycle.
 */
typedef struct NcdSolution NcdSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *ncd_last_error(void);

/**
 * New directed instance with `n` vertices and no arcs. Returns NULL when
 * `n` is too large.
 */
struct NcdInstance *ncd_instance_new(size_t n);

/**
 * # Safety
 * `inst` must come from this library and not be freed.
 */
enum NcdStatus ncd_instance_add_arc(struct NcdInstance *inst, size_t u, size_t v, int64_t weight);

/**
 * Undirected edge; the instance becomes mixed.
 *
 * # Safety
 * `inst` must come from this library and not be freed.
 */
enum NcdStatus ncd_instance_add_edge(struct NcdInstance *inst, size_t u, size_t v, int64_t weight);

/**
 * Parses the text file format (1-based ids in the text).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum NcdStatus ncd_instance_parse(const char *text, struct NcdInstance **out);

/**
 * # Safety
 * `inst` must be NULL or come from this library, and is invalid afterwards.
 */
void ncd_instance_free(struct NcdInstance *inst);

/**
 * Decides the instance and, when it is nearly conservative, computes all
 * distances. `max_k` bounds the trees per block; 0 picks the default.
 * A rejected instance is still a successful call.
 *
 * # Safety
 * `inst` must come from this library and `out` be writable.
 */
enum NcdStatus ncd_solve(const struct NcdInstance *inst, size_t max_k, struct NcdSolution **out);

/**
 * # Safety
 * `sol` must be NULL or come from this library, and is invalid afterwards.
 */
void ncd_solution_free(struct NcdSolution *sol);

/**
 * 1 if nearly conservative, 0 if not, -1 for NULL.
 *
 * # Safety
 * `sol` must be NULL or come from this library.
 */
int32_t ncd_solution_is_nearly_conservative(const struct NcdSolution *sol);

/**
 * Shortest simple path length from `s` to `t`. `reachable` is set to 0
 * and `dist` left untouched when no path exists.
 *
 * # Safety
 * `sol` must come from this library; `dist` and `reachable` be writable.
 */
enum NcdStatus ncd_solution_distance(const struct NcdSolution *sol,
                                     size_t s,
                                     size_t t,
                                     int64_t *dist,
                                     int32_t *reachable);

/**
 * Writes the vertices of a shortest simple path, `s` first. `len` always
 * receives the vertex count, so a call with `cap == 0` sizes the buffer.
 *
 * # Safety
 * `sol` must come from this library, `buf` hold `cap` entries, `len` be
 * writable.
 */
enum NcdStatus ncd_solution_path(const struct NcdSolution *sol,
                                 size_t s,
                                 size_t t,
                                 size_t *buf,
                                 size_t cap,
                                 size_t *len);

/**
 * Writes the vertices of the negative cycle proving the instance is not
 * nearly conservative, and its length.
 *
 * # Safety
 * `sol` must come from this library, `buf` hold `cap` entries, `len` and
 * `length` be writable.
 */
enum NcdStatus ncd_solution_witness(const struct NcdSolution *sol,
                                    size_t *buf,
                                    size_t cap,
                                    size_t *len,
                                    int64_t *length);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCD_H */

#ifndef HEAPGAME_H
#define HEAPGAME_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  /*
   No winning move: the position is P.
   */
  HG_MOVE_KIND_NONE = 0,
  HG_MOVE_KIND_SINGLE_HEAP = 1,
  HG_MOVE_KIND_BOTH_HEAPS = 2,
} HgMoveKind;

typedef enum {
  /*
   The player who just moved wins.
   */
  HG_OUTCOME_P = 0,
  /*
   The player to move wins.
   */
  HG_OUTCOME_N = 1,
} HgOutcome;

typedef enum {
  HG_STATUS_OK = 0,
  HG_STATUS_NULL_POINTER = 1,
  HG_STATUS_INVALID_PARAMS = 2,
  HG_STATUS_ILLEGAL_MOVE = 3,
  HG_STATUS_OVERFLOW = 4,
  HG_STATUS_RESOURCE_LIMIT = 5,
  HG_STATUS_BUFFER_TOO_SMALL = 6,
  HG_STATUS_TABLE_TOO_SMALL = 7,
  HG_STATUS_MALFORMED_INPUT = 8,
  HG_STATUS_OUT_OF_RANGE = 9,
  HG_STATUS_INTERNAL = 10,
  HG_STATUS_PANIC = 11,
} HgStatus;

/*
 Opaque strategy engine for one `(s, t)`.
 */
typedef struct HgEngine HgEngine;

/*
 Opaque table of P-positions `(n, A_n, B_n)`.
 */
typedef struct HgTable HgTable;

/*
 A move as the number of tokens taken from each heap.
 */
typedef struct {
  HgMoveKind kind;
  uint64_t take_x;
  uint64_t take_y;
} HgMove;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Static description of a status code. Never NULL.
 */
const char *hg_status_str(HgStatus status);

/*
 Creates an engine for the game `(s, t)`. Free it with `hg_engine_free`.

 # Safety
 `out_engine` must be NULL or valid for writes.
 */
HgStatus hg_engine_new(uint64_t s, uint64_t t, HgEngine **out_engine);

/*
 # Safety
 `engine` must be NULL or a pointer from `hg_engine_new` not yet freed.
 */
void hg_engine_free(HgEngine *engine);

/*
 # Safety
 `engine` must come from `hg_engine_new`; `out_outcome` must be valid for writes.
 */
HgStatus hg_classify(const HgEngine *engine_ptr, uint64_t x, uint64_t y, HgOutcome *out_outcome);

/*
 Writes a move into a P-position, or kind `HG_MOVE_KIND_NONE` when `(x, y)`
 is itself P. `take_x` and `take_y` refer to the heaps as given.

 # Safety
 `engine` must come from `hg_engine_new`; `out_move` must be valid for writes.
 */
HgStatus hg_winning_move(const HgEngine *engine_ptr, uint64_t x, uint64_t y, HgMove *out_move);

/*
 # Safety
 `engine` must come from `hg_engine_new`; `out_legal` must be valid for writes.
 */
HgStatus hg_is_legal_move(const HgEngine *engine_ptr,
                          uint64_t x,
                          uint64_t y,
                          uint64_t to_x,
                          uint64_t to_y,
                          bool *out_legal);

/*
 Writes the representation of `m` as a NUL-terminated string, most
 significant digit first. `*out_needed`, when not NULL, receives the
 buffer size required including the terminator, also on
 `HG_STATUS_BUFFER_TOO_SMALL`.

 # Safety
 `buf` must be valid for `cap` bytes of writes (it may be NULL when `cap` is 0).
 */
HgStatus hg_represent(const HgEngine *engine_ptr,
                      uint64_t m,
                      char *buf,
                      uintptr_t cap,
                      uintptr_t *out_needed);

/*
 Parses a representation and writes its value. Rejects digit strings
 the greedy algorithm would never produce.

 # Safety
 `text` must be a NUL-terminated string; `out_value` must be valid for writes.
 */
HgStatus hg_value(const HgEngine *engine_ptr, const char *text, uint64_t *out_value);

/*
 Number of evil integers in `1..=x`.

 # Safety
 `engine` must come from `hg_engine_new`; `out_rank` must be valid for writes.
 */
HgStatus hg_rank_evil(const HgEngine *engine_ptr, uint64_t x, uint64_t *out_rank);

/*
 The `n`-th evil integer, which is `A_n`.

 # Safety
 `engine` must come from `hg_engine_new`; `out_value` must be valid for writes.
 */
HgStatus hg_select_evil(const HgEngine *engine_ptr, uint64_t n, uint64_t *out_value);

/*
 Builds rows `0..=n_max` by the mex recurrence. Free with `hg_table_free`.

 # Safety
 `out_table` must be valid for writes.
 */
HgStatus hg_table_new_mex(uint64_t s, uint64_t t, uint64_t n_max, HgTable **out_table);

/*
 Number of rows; 0 for NULL.

 # Safety
 `table` must be NULL or come from `hg_table_new_mex`.
 */
uintptr_t hg_table_len(const HgTable *table);

/*
 # Safety
 `table` must come from `hg_table_new_mex`; `out_a`, `out_b` must be valid for writes.
 */
HgStatus hg_table_row(const HgTable *table, uintptr_t n, uint64_t *out_a, uint64_t *out_b);

/*
 # Safety
 `table` must be NULL or a pointer from `hg_table_new_mex` not yet freed.
 */
void hg_table_free(HgTable *table);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEAPGAME_H */

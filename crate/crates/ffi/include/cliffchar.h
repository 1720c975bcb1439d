#ifndef CLIFFCHAR_H
#define CLIFFCHAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Output format for `cliffchar_table_render`.
 */
typedef enum {
  CLIFFCHAR_FORMAT_TEXT = 0,
  CLIFFCHAR_FORMAT_JSON = 1,
  CLIFFCHAR_FORMAT_CSV = 2,
} CliffcharFormat;

/*
 Result of every fallible call.
 */
typedef enum {
  CLIFFCHAR_STATUS_OK = 0,
  /*
   A required pointer was null.
   */
  CLIFFCHAR_STATUS_NULL_POINTER = 1,
  /*
   An argument is out of range or malformed.
   */
  CLIFFCHAR_STATUS_INVALID_ARGUMENT = 2,
  /*
   The request exceeds the supported group sizes.
   */
  CLIFFCHAR_STATUS_SIZE_CAP = 3,
  /*
   The value asked for is not a rational integer.
   */
  CLIFFCHAR_STATUS_NOT_INTEGER = 4,
  /*
   A consistency check of the computation failed.
   */
  CLIFFCHAR_STATUS_CHECK_FAILED = 5,
  /*
   Filesystem or serialisation failure.
   */
  CLIFFCHAR_STATUS_IO = 6,
  /*
   Any other library error.
   */
  CLIFFCHAR_STATUS_INTERNAL = 7,
  /*
   A panic was caught at the boundary.
   */
  CLIFFCHAR_STATUS_PANIC = 8,
} CliffcharStatus;

/*
 An irreducible (or lifted) character table. Opaque.
 */
typedef struct CliffcharTable CliffcharTable;

/*
 Message for the last failed call on this thread, or null. Valid until
 the next call into the library from the same thread.
 */
const char *cliffchar_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *cliffchar_version(void);

/*
 Irr(𝒞_n) for `n` in {1, 2}.
 */
CliffcharStatus cliffchar_chartable(uint32_t n, CliffcharTable **out);

/*
 The five 1-qubit irreducibles lifted to class functions on 𝒞₂.
 */
CliffcharStatus cliffchar_lift_one_qubit(CliffcharTable **out);

void cliffchar_table_free(CliffcharTable *table);

/*
 Group order.
 */
CliffcharStatus cliffchar_table_group_order(const CliffcharTable *table, uint64_t *out);

CliffcharStatus cliffchar_table_rows(const CliffcharTable *table, uintptr_t *out);

CliffcharStatus cliffchar_table_classes(const CliffcharTable *table, uintptr_t *out);

/*
 Size and element order of class `class`.
 */
CliffcharStatus cliffchar_table_class(const CliffcharTable *table,
                                      uintptr_t class_,
                                      uint64_t *size,
                                      uint32_t *element_order);

/*
 Value of row `row` at class `class`, when it is a rational integer.
 */
CliffcharStatus cliffchar_table_value(const CliffcharTable *table,
                                      uintptr_t row,
                                      uintptr_t class_,
                                      int64_t *out);

/*
 Label of row `row`; free with `cliffchar_string_free`.
 */
CliffcharStatus cliffchar_table_label(const CliffcharTable *table, uintptr_t row, char **out);

/*
 The table rendered as text, JSON or CSV; free with `cliffchar_string_free`.
 */
CliffcharStatus cliffchar_table_render(const CliffcharTable *table,
                                       CliffcharFormat format,
                                       char **out);

/*
 Runs the invariant suite for `n` in {1, 2}. `passed` receives whether
 every check held; `report`, if non-null, receives the report as JSON.
 */
CliffcharStatus cliffchar_verify(uint32_t n, bool *passed, char **report);

/*
 `(−1)^{a·x}`, the Pauli character labelled `a` at the Weyl index
 `x`; bit `j < n` is the Z part and bit `n + j` the X part of qubit `j+1`.
 */
CliffcharStatus cliffchar_pauli_char_value(uint32_t n, uint64_t a, uint64_t x, int8_t *out);

/*
 Releases a string returned by this library.
 */
void cliffchar_string_free(char *s);

#endif  /* CLIFFCHAR_H */

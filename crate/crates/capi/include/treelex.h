/* C ABI for the treelex lexicon toolkit. */

#ifndef TREELEX_H
#define TREELEX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status of a C API call.
typedef enum TlxStatus {
  TLX_STATUS_OK = 0,
  // Malformed theory text, path, or identifier.
  TLX_STATUS_SYNTAX_ERROR = 1,
  // A referenced node does not exist.
  TLX_STATUS_UNKNOWN_NODE = 2,
  // A node defines no prefix of the queried path.
  TLX_STATUS_NO_MATCHING_SENTENCE = 3,
  // The inheritance depth limit was hit (cyclic theory).
  TLX_STATUS_DEPTH_EXCEEDED = 4,
  // A lexical rule was not applicable to the entry.
  TLX_STATUS_RULE_NOT_APPLICABLE = 5,
  // Any other evaluation or reconstruction failure.
  TLX_STATUS_EVAL_ERROR = 6,
  // A null pointer, invalid UTF-8, or otherwise malformed argument.
  TLX_STATUS_INVALID_ARGUMENT = 7,
} TlxStatus;

// Opaque theory handle.
typedef struct TlxTheory TlxTheory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse theory text into a new handle.
//
// # Safety
// `source` must be a valid NUL-terminated string and `out` a valid
// pointer; on `Ok` the caller owns the handle and must free it with
// [`tlx_theory_free`].
enum TlxStatus tlx_theory_parse(const char *source, struct TlxTheory **out);

// Load a built-in fragment (`figure1` or `extended`) into a new handle.
//
// # Safety
// As for [`tlx_theory_parse`].
enum TlxStatus tlx_theory_fragment(const char *name, struct TlxTheory **out);

// Release a theory handle. Null is ignored.
//
// # Safety
// `theory` must be null or a handle returned by this library that has not
// been freed already.
void tlx_theory_free(struct TlxTheory *theory);

// Number of node definitions in the theory; 0 on a null handle.
//
// # Safety
// `theory` must be null or a live handle from this library.
uintptr_t tlx_theory_node_count(const struct TlxTheory *theory);

// Render the theory back to its canonical text form.
//
// # Safety
// `theory` must be a live handle; `out` a valid pointer. The caller frees
// the string with [`tlx_string_free`].
enum TlxStatus tlx_theory_render(const struct TlxTheory *theory, char **out);

// Evaluate `node:path` and write the atoms, space-separated.
// `path` uses the angle-bracket syntax, e.g. `"<parent cat>"`.
// `max_depth` of 0 selects the default limit.
//
// # Safety
// `theory` must be a live handle; `node`, `path` valid NUL-terminated
// strings; `out` a valid pointer. The caller frees the string with
// [`tlx_string_free`].
enum TlxStatus tlx_theory_query(const struct TlxTheory *theory,
                                const char *node,
                                const char *path,
                                uintptr_t max_depth,
                                char **out);

// Reconstruct an entry's elementary tree and write its bracketed form.
//
// `rule` may be null or one of `dative`, `passive`, `sai`, `whq`; `alt`
// may be null or an alternation name (mutually exclusive with `rule`).
// `sets` may be null or an array of `sets_len` strings of the form
// `"<path>=atom"`, applied as an overlay before reconstruction.
//
// # Safety
// `theory` must be a live handle; `entry` a valid NUL-terminated string;
// `rule`/`alt` null or valid strings; `sets` null or a valid array of
// `sets_len` valid strings; `out` a valid pointer. The caller frees the
// result with [`tlx_string_free`].
enum TlxStatus tlx_theory_tree(const struct TlxTheory *theory,
                               const char *entry,
                               const char *rule,
                               const char *alt,
                               const char *const *sets,
                               uintptr_t sets_len,
                               uintptr_t max_depth,
                               char **out);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library that has not been
// freed already.
void tlx_string_free(char *s);

// Description of the last error on this thread; the empty string after a
// successful call. Valid until the next fallible call on this thread.
const char *tlx_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREELEX_H */

#ifndef VOLTOPS_H
#define VOLTOPS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  VOLTOPS_STATUS_OK = 0,
  // Null pointer, bad UTF-8 or an out-of-range argument.
  VOLTOPS_STATUS_INVALID_ARGUMENT = 1,
  // The inputs are well formed but the operation does not apply to them.
  VOLTOPS_STATUS_DOMAIN = 2,
  // A coset enumeration hit its cap.
  VOLTOPS_STATUS_INCONCLUSIVE = 3,
  VOLTOPS_STATUS_PARSE = 4,
  VOLTOPS_STATUS_PANIC = 5,
} VoltopsStatus;

typedef enum {
  VOLTOPS_CONNECTIVITY_YES = 0,
  VOLTOPS_CONNECTIVITY_NO = 1,
  VOLTOPS_CONNECTIVITY_INCONCLUSIVE = 2,
} VoltopsConnectivity;

// Opaque voltage operator handle.
typedef struct VoltopsOperator VoltopsOperator;

// Opaque premaniplex handle.
typedef struct VoltopsPremaniplex VoltopsPremaniplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or null. The pointer
// stays valid until the next call into this library on the same thread.
const char *voltops_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer obtained from this library, freed once.
void voltops_string_free(char *s);

// Parses `.pmx` text.
//
// # Safety
// `pmx` must be a NUL-terminated string; `out` must be writable.
VoltopsStatus voltops_premaniplex_from_pmx(const char *pmx, VoltopsPremaniplex **out);

// Serializes to `.pmx` text; free the result with [`voltops_string_free`].
//
// # Safety
// `p` must be a live handle; `out` must be writable.
VoltopsStatus voltops_premaniplex_to_pmx(const VoltopsPremaniplex *p, char **out);

// # Safety
// `p` must be null or a handle from this library, freed once.
void voltops_premaniplex_free(VoltopsPremaniplex *p);

// Rank of `p`, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t voltops_premaniplex_rank(const VoltopsPremaniplex *p);

// Flag count of `p`, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t voltops_premaniplex_flag_count(const VoltopsPremaniplex *p);

// Flag graph of the string Coxeter group with Schläfli symbol
// `schlafli[0..len]`, by coset enumeration with at most `cap` cosets.
//
// # Safety
// `schlafli` must point to `len` values; `out` must be writable.
VoltopsStatus voltops_build_coxeter(const size_t *schlafli,
                                    size_t len,
                                    size_t cap,
                                    VoltopsPremaniplex **out);

// Built-in operator by name, such as `"medial"` or `"prism:3"`.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
VoltopsStatus voltops_operator_builtin(const char *name, VoltopsOperator **out);

// Parses `.vop` text.
//
// # Safety
// `vop` must be a NUL-terminated string; `out` must be writable.
VoltopsStatus voltops_operator_from_vop(const char *vop, VoltopsOperator **out);

// Serializes to `.vop` text; free the result with [`voltops_string_free`].
//
// # Safety
// `op` must be a live handle; `out` must be writable.
VoltopsStatus voltops_operator_to_vop(const VoltopsOperator *op, char **out);

// # Safety
// `op` must be null or a handle from this library, freed once.
void voltops_operator_free(VoltopsOperator *op);

// The product `X ⋊ Y`.
//
// # Safety
// `x` and `op` must be live handles; `out` must be writable.
VoltopsStatus voltops_product(const VoltopsPremaniplex *x,
                              const VoltopsOperator *op,
                              VoltopsPremaniplex **out);

// Order of the automorphism group of a connected premaniplex.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
VoltopsStatus voltops_automorphism_order(const VoltopsPremaniplex *p, size_t *out);

// Number of flag orbits under the automorphism group.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
VoltopsStatus voltops_orbit_count(const VoltopsPremaniplex *p, size_t *out);

// # Safety
// `p` and `q` must be live handles; `out` must be writable.
VoltopsStatus voltops_is_isomorphic(const VoltopsPremaniplex *p,
                                    const VoltopsPremaniplex *q,
                                    bool *out);

// Whether `p` covers `q`.
//
// # Safety
// `p` and `q` must be live handles; `out` must be writable.
VoltopsStatus voltops_covers(const VoltopsPremaniplex *p, const VoltopsPremaniplex *q, bool *out);

// Whether the operator sends connected premaniplexes to connected ones.
// `index` receives the subgroup index for a `No` answer when it is known,
// and 0 otherwise.
//
// # Safety
// `op` must be a live handle; `answer` and `index` must be writable.
VoltopsStatus voltops_preserves_connectivity(const VoltopsOperator *op,
                                             size_t cap,
                                             VoltopsConnectivity *answer,
                                             size_t *index);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VOLTOPS_H */

/*
 * C interface to the interval exchange library.
 *
 * Every number crosses this boundary as text: rationals are "p/q" (or "p"),
 * permutations "3,2,1", interval sets "lo,hi;lo,hi". Functions return an
 * iet_status; on failure iet_last_error() describes the problem for the
 * calling thread. Strings returned through char** are heap-allocated and
 * must be released with iet_string_free.
 */
#ifndef IET_C_H
#define IET_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(IET_BUILDING_LIBRARY)
#define IET_API __attribute__((visibility("default")))
#else
#define IET_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum iet_status {
  IET_OK = 0,
  IET_E_INVALID = 1,      /* malformed input */
  IET_E_DOMAIN = 2,       /* point or set outside [0,|lambda|) */
  IET_E_CONNECTION = 3,   /* Rauzy-Veech induction undefined */
  IET_E_RESOURCE = 4,     /* a cap was exceeded */
  IET_E_INCONSISTENT = 5, /* internal cross-check failed */
  IET_E_PRECONDITION = 6, /* called outside the operation's contract */
  IET_E_NOT_A_TOWER = 7,  /* tower floors overlap */
  IET_E_UNKNOWN = 99
} iet_status;

typedef enum iet_admissibility {
  IET_ADMISSIBLE_VERIFIED = 0,
  IET_ADMISSIBLE_REFUTED = 1,
  IET_ADMISSIBLE_UNKNOWN = 2
} iet_admissibility;

/* Opaque interval exchange transformation. */
typedef struct iet_map iet_map;

IET_API const char* iet_status_name(iet_status status);
IET_API const char* iet_last_error(void);
IET_API void iet_string_free(char* s);

/* ---- construction ------------------------------------------------------ */

/* {"lambda": ["1/2","1/4","1/4"], "pi": [3,2,1]} */
IET_API iet_status iet_map_from_json(const char* json, iet_map** out);
IET_API iet_status iet_map_create(const char* const* lengths, const int* pi, size_t m, iet_map** out);
IET_API void iet_map_destroy(iet_map* map);

IET_API size_t iet_map_size(const iet_map* map);
IET_API int iet_map_is_irreducible(const iet_map* map);
IET_API iet_status iet_map_to_json(const iet_map* map, char** out);
IET_API iet_status iet_map_total(const iet_map* map, char** out);

/* ---- dynamics ---------------------------------------------------------- */

/* T^n(x), n may be negative. */
IET_API iet_status iet_map_apply(const iet_map* map, const char* x, int64_t n, char** out);
/* T^n(s) for an interval set "lo,hi;lo,hi"; result in the same format. */
IET_API iet_status iet_map_image_set(const iet_map* map, const char* set, int64_t n, char** out);
/* First-return IET on [0,length). */
IET_API iet_status iet_map_induce(const iet_map* map, const char* length, int64_t cap, iet_map** out);
IET_API iet_status iet_map_first_return(const iet_map* map, const char* length, const char* x, int64_t cap,
                                        int64_t* k, char** y);
/* *step = 1-based step of the first connection, or 0 when none within depth. */
IET_API iet_status iet_map_detect_connection(const iet_map* map, int64_t depth, int64_t* step);
IET_API iet_status iet_map_is_admissible(const iet_map* map, const char* xi, const char* eta, int64_t bound,
                                         iet_admissibility* verdict);

/* ---- Rauzy-Veech induction --------------------------------------------- */

/* One step; *move receives 'a' or 'b'. */
IET_API iet_status iet_rauzy_step(const iet_map* map, iet_map** out, char* move);
/* Per-step CSV. On a connection the partial trace is returned together with
 * IET_E_CONNECTION and *stopped_at set to the failing step (else 0). */
IET_API iet_status iet_rauzy_trace_csv(const iet_map* map, int64_t n, char** out, int64_t* stopped_at);
/* Rauzy diagram of the class of pi ("3,2,1") as a DOT digraph. */
IET_API iet_status iet_rauzy_class_dot(const char* pi, char** out, size_t* node_count);

/* ---- symmetric 3-IETs --------------------------------------------------- */

IET_API iet_status iet_zstar_json(const iet_map* map, int64_t cap, char** out);
/* Seeded sweep; *all_ok is 1 when every row satisfies a2 + 1 = a1 + a3 and
 * agrees with orbit simulation. */
IET_API iet_status iet_verify_lemma2_csv(size_t samples, int max_path_len, uint64_t seed, char** out,
                                         int* all_ok);
/* Return-time columns over the three induced subintervals, with the Z* data. */
IET_API iet_status iet_return_towers_json(const iet_map* map, int64_t cap, char** out);
IET_API iet_status iet_tower_json(const iet_map* map, const char* lo, const char* hi, int64_t height,
                                  char** out);

/* ---- whirly apparatus -------------------------------------------------- */

IET_API iet_status iet_whirly_construct(const char* alpha, const char* eps1, const char* eps2, iet_map** out);
IET_API iet_status iet_whirly_claims_csv(const char* alpha, const char* eps1, const char* eps2, int64_t l,
                                         char** out, int* all_ok);
IET_API iet_status iet_whirly_major_json(const iet_map* map, const char* eps, int64_t l, int64_t depth,
                                         char** out, int* all_ok);
IET_API iet_status iet_whirly_lemma35_json(const iet_map* map, int64_t depth, char** out, int* all_ok);

typedef struct iet_probe_options {
  const char* eps;              /* required */
  int64_t l;                    /* shift for self mode, default 1 */
  int64_t depth;                /* induction depth for harvesting, default 200 */
  int metric_n;                 /* weak metric truncation, default 20 */
  int pair_mode;                /* 0: self-shift of E, 1: pair (E,F) */
  const char* set_e;            /* NULL: [0,|lambda|/2) */
  const char* set_f;            /* required in pair mode */
  int64_t small_powers;         /* powers 1..small_powers tried last, default 16 */
  const int64_t* candidates;    /* optional explicit powers */
  size_t candidate_count;
} iet_probe_options;

IET_API void iet_probe_options_init(iet_probe_options* options);
IET_API iet_status iet_whirly_probe_json(const iet_map* map, const iet_probe_options* options, char** out,
                                         int* success);

#ifdef __cplusplus
}
#endif

#endif /* IET_C_H */

/* dagreal — C API for the DAG degree-sequence realization solver.
 *
 * All functions return a dagreal_status; outputs are passed back through
 * pointers. Handles are opaque and freed with their matching *_free function.
 * On failure, dagreal_last_error() holds a thread-local message for the most
 * recent failing call. Strings returned through char** are owned by the
 * caller and released with dagreal_string_free().
 */
#ifndef DAGREAL_H
#define DAGREAL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct dagreal_instance dagreal_instance;
typedef struct dagreal_witness dagreal_witness;
typedef struct dagreal_result dagreal_result;
typedef struct dagreal_trace dagreal_trace;
typedef struct dagreal_tp dagreal_tp;

typedef enum dagreal_status {
    DAGREAL_OK = 0,
    DAGREAL_ERR_ARG = 1,       /* null or out-of-range argument */
    DAGREAL_ERR_PARSE = 2,     /* malformed input text */
    DAGREAL_ERR_INVALID = 3,   /* structurally invalid instance or witness */
    DAGREAL_ERR_TOO_LARGE = 4, /* guarded operation above its size limit */
    DAGREAL_ERR_INTERNAL = 5,
} dagreal_status;

typedef enum dagreal_verdict {
    DAGREAL_REALIZABLE = 0,
    DAGREAL_UNREALIZABLE = 1,
    DAGREAL_UNKNOWN = 2, /* not decided within budget or caps */
} dagreal_verdict;

typedef enum dagreal_mode {
    DAGREAL_MODE_AUTO = 0,  /* chain, then exact, then fpt */
    DAGREAL_MODE_EXACT = 1,
    DAGREAL_MODE_FPT = 2,
    DAGREAL_MODE_CHAIN = 3,
} dagreal_mode;

const char* dagreal_version(void);
const char* dagreal_last_error(void);
void dagreal_string_free(char* s);

/* -------- instances -------- */

dagreal_status dagreal_instance_parse(const char* text, dagreal_instance** out);
dagreal_status dagreal_instance_from_pairs(const int32_t* in_degs, const int32_t* out_degs,
                                           size_t n, dagreal_instance** out);
void dagreal_instance_free(dagreal_instance* inst);

/* number of entries, including isolated (0,0) pairs */
size_t dagreal_instance_size(const dagreal_instance* inst);
int32_t dagreal_instance_delta(const dagreal_instance* inst);
dagreal_status dagreal_instance_pair(const dagreal_instance* inst, size_t index,
                                     int32_t* in_deg, int32_t* out_deg);
dagreal_status dagreal_instance_to_text(const dagreal_instance* inst, char** out);

/* -------- solving -------- */

typedef struct dagreal_solve_options {
    int mode;               /* dagreal_mode */
    uint64_t budget;        /* max search-state visits; 0 = default (10^7) */
    int threads;            /* exact-mode branch parallelism; <=1 sequential */
    int pruning;            /* exact-mode opposed-order pruning; default 1 */
    uint64_t prefix_cap;    /* fpt: cap on prefix/suffix length; 0 = bound */
    uint64_t nonrep_cap;    /* fpt: cap on non-repeating orderings; 0 = bound */
    uint64_t supertype_cap; /* fpt: cap on super-type length; 0 = bound */
} dagreal_solve_options;

dagreal_solve_options dagreal_solve_options_default(void);

dagreal_status dagreal_solve(const dagreal_instance* inst,
                             const dagreal_solve_options* opts, dagreal_result** out);
void dagreal_result_free(dagreal_result* res);

dagreal_verdict dagreal_result_verdict(const dagreal_result* res);
/* borrowed view, NULL when there is no witness; freed with the result */
const dagreal_witness* dagreal_result_witness(const dagreal_result* res);
uint64_t dagreal_result_states(const dagreal_result* res);
double dagreal_result_millis(const dagreal_result* res);
/* reason or cap qualification for non-realizable verdicts; "" when none */
const char* dagreal_result_note(const dagreal_result* res);

/* brute-force permutation oracle; DAGREAL_ERR_TOO_LARGE when n > 9 */
dagreal_status dagreal_oracle(const dagreal_instance* inst, dagreal_verdict* out);

/* -------- potential traces -------- */

/* order holds 1-based positions into the instance; pass len 0 for the
 * identity order */
dagreal_status dagreal_trace_run(const dagreal_instance* inst, const int32_t* order,
                                 size_t len, dagreal_trace** out);
void dagreal_trace_free(dagreal_trace* tr);

int dagreal_trace_feasible(const dagreal_trace* tr);
/* number of computed positions; potentials exist for positions 1..rows */
size_t dagreal_trace_rows(const dagreal_trace* tr);
/* 0 when feasible; 1..n first stuck element; n+1 nonzero final potential */
size_t dagreal_trace_fail_position(const dagreal_trace* tr);
size_t dagreal_trace_delta(const dagreal_trace* tr);
int32_t dagreal_trace_value(const dagreal_trace* tr, size_t position);
dagreal_status dagreal_trace_counts(const dagreal_trace* tr, size_t position, int32_t* buf,
                                    size_t buflen);

/* -------- witnesses -------- */

dagreal_status dagreal_witness_parse(const char* text, dagreal_witness** out);
void dagreal_witness_free(dagreal_witness* wit);

size_t dagreal_witness_vertices(const dagreal_witness* wit);
size_t dagreal_witness_arc_count(const dagreal_witness* wit);
dagreal_status dagreal_witness_arc(const dagreal_witness* wit, size_t index, int32_t* from,
                                   int32_t* to); /* 1-based endpoints */
dagreal_status dagreal_witness_to_text(const dagreal_witness* wit, char** out);
dagreal_status dagreal_witness_to_dot(const dagreal_witness* wit, char** out);

/* valid = 1 when the witness realizes the instance; otherwise 0 with a
 * structured reason written to *reason (optional) */
dagreal_status dagreal_verify(const dagreal_instance* inst, const dagreal_witness* wit,
                              int* valid, char** reason);

/* -------- 3-partition reduction -------- */

dagreal_status dagreal_tp_parse(const char* text, dagreal_tp** out);
dagreal_status dagreal_tp_new(int64_t m, int64_t b, const int64_t* a, size_t len,
                              dagreal_tp** out);
void dagreal_tp_free(dagreal_tp* tp);
dagreal_status dagreal_tp_to_text(const dagreal_tp* tp, char** out);

dagreal_status dagreal_reduce(const dagreal_tp* tp, dagreal_instance** out);

/* triples: 3m 1-based indices into A, consecutive groups of three */
dagreal_status dagreal_witness_from_partition(const dagreal_tp* tp, const int32_t* triples,
                                              size_t len, dagreal_witness** out);

/* writes m triples (3m indices) into out; *m_out receives m */
dagreal_status dagreal_extract_partition(const dagreal_instance* inst,
                                         const dagreal_witness* wit, int32_t* out,
                                         size_t buflen, size_t* m_out);

/* -------- generation -------- */

dagreal_status dagreal_generate(int32_t n, int32_t delta, uint64_t seed,
                                int shuffle_degrees, dagreal_instance** out);

#ifdef __cplusplus
}
#endif

#endif /* DAGREAL_H */

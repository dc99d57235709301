#ifndef HOPFFLOW_H
#define HOPFFLOW_H

/* C interface to the hopfflow library.
 *
 * Inputs and structured results travel as UTF-8 JSON text in the same formats
 * as the files the command line tool reads.  Every returned string is owned by
 * the caller and released with hf_string_free; every handle with its own
 * *_free function.  On failure a call returns a nonzero status, leaves its
 * output untouched, and hf_last_error() describes the problem (per thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(HOPFFLOW_BUILDING)
#define HF_API __attribute__((visibility("default")))
#else
#define HF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hf_status {
  HF_OK = 0,
  HF_ERR_PARSE = 1,      /* malformed JSON or file content */
  HF_ERR_INVALID = 2,    /* well-formed input that violates an invariant */
  HF_ERR_CAPACITY = 3,   /* enumeration cap exceeded */
  HF_ERR_ARGUMENT = 4,   /* bad parameter value */
  HF_ERR_TRUNCATION = 5, /* Laurent or series cap exceeded */
  HF_ERR_RESOURCE = 6,   /* evaluation step budget exhausted */
  HF_ERR_UNDEFINED = 7,  /* value not defined (e.g. not regular) */
  HF_ERR_INTERNAL = 8
} hf_status;

typedef struct hf_graph hf_graph;
typedef struct hf_model hf_model;
typedef struct hf_chart hf_chart;

HF_API const char* hf_version(void);
HF_API const char* hf_status_name(hf_status s);
/* Message of the last failed call on this thread; "" when none. */
HF_API const char* hf_last_error(void);
HF_API void hf_string_free(char* s);

/* -- graphs ---------------------------------------------------------------- */

HF_API hf_status hf_graph_parse(const char* json, hf_graph** out);
HF_API void hf_graph_free(hf_graph* g);
HF_API hf_status hf_graph_to_json(const hf_graph* g, char** out);
/* {"ok": bool, "violations": [...]}; succeeds even when violations exist. */
HF_API hf_status hf_graph_validate(const hf_graph* g, char** out);
/* Canonical key, |Aut|, components, Euler characteristic, directedness. */
HF_API hf_status hf_graph_info(const hf_graph* g, char** out);
/* Every cut with its two parts. */
HF_API hf_status hf_graph_cuts(const hf_graph* g, char** out);
/* Classes of tail-free graphs with at most max_edges edges; valences may be
 * NULL.  connected != 0 drops disconnected classes and the empty graph. */
HF_API hf_status hf_graphs_enumerate(int max_edges, const int* valences, size_t n_valences, int connected,
                                     char** out);
/* Fully oriented classes with at most max_flags flags. */
HF_API hf_status hf_graphs_enumerate_oriented(int max_flags, int connected, char** out);

/* -- toy model series ------------------------------------------------------- */

HF_API hf_status hf_model_parse(const char* json, hf_model** out);
HF_API void hf_model_free(hf_model* m);
/* method: "graphs", "wick", "connected" or "both" (adds a coefficient diff). */
HF_API hf_status hf_feynman_series(const hf_model* m, int order, const char* method, char** out);
/* Tree sum, stationary point and the tree identities under both conventions. */
HF_API hf_status hf_feynman_trees(const hf_model* m, int order, char** out);

/* -- graph Hopf algebra ----------------------------------------------------- */

/* element: a graph object, an array of graphs (product) or an element array
 * [{"coeff", "graph"}].  family: "oriented" or "oriented:l1,l2,..." for a
 * label alphabet; NULL means "oriented". */
HF_API hf_status hf_hopf_coproduct(const char* element, const char* family, int reduced, char** out);
HF_API hf_status hf_hopf_antipode(const char* element, const char* family, int degree_bound, char** out);

/* -- renormalization --------------------------------------------------------- */

/* scheme: "ms" (minimal subtraction) or "complementary:z0"; NULL means "ms".
 * degree_bound < 0 uses the file's bound. */
HF_API hf_status hf_renorm_birkhoff(const char* character, const char* family, const char* scheme,
                                    int degree_bound, char** out);

/* -- flowcharts --------------------------------------------------------------- */

HF_API hf_status hf_chart_parse(const char* json, hf_chart** out);
HF_API void hf_chart_free(hf_chart* t);
HF_API hf_status hf_chart_to_json(const hf_chart* t, char** out);
HF_API hf_status hf_chart_validate(const hf_chart* t, char** out);
/* Output tuple as a JSON array of integers; budget 0 means the default. */
HF_API hf_status hf_chart_eval(const hf_chart* t, const uint64_t* args, size_t n_args, uint64_t budget, char** out);
HF_API hf_status hf_chart_normalize(const hf_chart* t, hf_chart** out);
HF_API hf_status hf_chart_key(const hf_chart* t, char** out);
/* {"n": k, "table": [v_1 .. v_k or null]} plus optional "group": "cyclic". */
HF_API hf_status hf_bijectivize(const char* partial_map, char** out);

/* -- sequences ------------------------------------------------------------------ */

/* product: "pointwise", "maxconv" or "cauchy". */
HF_API hf_status hf_seq_product(const char* f, const char* g, const char* product, char** out);
/* prime != 0 selects the shifted sum. */
HF_API hf_status hf_seq_sum(const char* f, int prime, char** out);
HF_API hf_status hf_seq_gamma(const char* poly, int order, char** out);
HF_API hf_status hf_seq_fit(const double* values, size_t n, int degree, char** out);
HF_API hf_status hf_seq_norm(const char* f, char** out);
/* Euler-Maclaurin estimates of gamma and zeta(2..max_zeta). */
HF_API hf_status hf_seq_constants(int max_zeta, char** out);

/* -- timing ---------------------------------------------------------------------- */

/* costs: {"vertex id": cost}.  Running time plus the per-cut report. */
HF_API hf_status hf_time_chart(const hf_chart* t, const char* costs, char** out);
HF_API hf_status hf_time_graph(const hf_graph* g, const char* costs, char** out);

#ifdef __cplusplus
}
#endif

#endif

/*
 * ipoly — evaluation of the multivariate independence polynomial at complex
 * and negative activities, zero-free-region membership testing, a variable
 * model rounding solver, and univariate tree-recurrence experiments.
 *
 * C interface: opaque handles, integer status codes, thread-local error
 * messages. All functions returning ipoly_status set the last-error message
 * on failure; out parameters are written only on IPOLY_OK.
 */
#ifndef IPOLY_H
#define IPOLY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IPOLY_API __declspec(dllexport)
#else
#define IPOLY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ipoly_status {
    IPOLY_OK = 0,
    IPOLY_ERR_INVALID_ARGUMENT = 1,
    IPOLY_ERR_PARSE = 2,
    IPOLY_ERR_TOO_LARGE = 3,
    IPOLY_ERR_BUDGET = 4,
    IPOLY_ERR_SINGULAR = 5,
    IPOLY_ERR_SLACK_VIOLATION = 6,
    IPOLY_ERR_INFEASIBLE = 7,
    IPOLY_ERR_INTERNAL = 8
} ipoly_status;

IPOLY_API const char* ipoly_version(void);
/* Stable taxonomy name of a status: "budget", "singularity", ... */
IPOLY_API const char* ipoly_status_name(ipoly_status status);
/* Message of the most recent failure on the calling thread. */
IPOLY_API const char* ipoly_last_error(void);
IPOLY_API void ipoly_string_free(char* s);

/* ---------------- graphs ---------------- */

typedef struct ipoly_graph ipoly_graph;

/* edge_pairs holds 2*edge_count ints: u0,v0,u1,v1,... */
IPOLY_API ipoly_status ipoly_graph_create(int32_t n, const int32_t* edge_pairs, size_t edge_count,
                                          ipoly_graph** out);
/* {"n": int, "edges": [[u,v], ...]} */
IPOLY_API ipoly_status ipoly_graph_from_json(const char* json_text, ipoly_graph** out);
IPOLY_API void ipoly_graph_free(ipoly_graph* g);
IPOLY_API int32_t ipoly_graph_vertex_count(const ipoly_graph* g);
IPOLY_API int32_t ipoly_graph_edge_count(const ipoly_graph* g);
IPOLY_API int32_t ipoly_graph_degree(const ipoly_graph* g, int32_t v);
IPOLY_API int32_t ipoly_graph_max_degree(const ipoly_graph* g);
/* Number of self-avoiding walks with exactly `length` edges starting at v. */
IPOLY_API ipoly_status ipoly_graph_count_saw(const ipoly_graph* g, int32_t v, int32_t length,
                                             uint64_t* out);

/* Parses an activities file (array of reals or {"re","im"} objects) into the
 * caller's arrays of length expected_n. im may be NULL to require reals. */
IPOLY_API ipoly_status ipoly_activities_from_json(const char* json_text, size_t expected_n,
                                                  double* re, double* im);

/* ---------------- exact oracle ---------------- */

/* Exact value of the alternating-sign polynomial at activities (re, im).
 * im == NULL means real activities. Limited to 30 vertices. */
IPOLY_API ipoly_status ipoly_eval_exact(const ipoly_graph* g, const double* re, const double* im,
                                        double* out_re, double* out_im);
IPOLY_API ipoly_status ipoly_eval_exact_json(const ipoly_graph* g, const double* re,
                                             const double* im, char** out_json);
/* 1 iff every subset polynomial is positive; limited to 24 vertices. */
IPOLY_API ipoly_status ipoly_membership_exact(const ipoly_graph* g, const double* p_abs,
                                              int32_t* out_member);
/* Smallest t in (0, t_max] where the ray polynomial vanishes; found = 0 when
 * there is no such t. */
IPOLY_API ipoly_status ipoly_first_root_on_ray(const ipoly_graph* g, const double* p_abs,
                                               double t_max, double tol, int32_t* out_found,
                                               double* out_t);

/* ---------------- correlation-decay evaluation ---------------- */

typedef struct ipoly_decay_options {
    int32_t depth;        /* < 0: derive from alpha/eps */
    double alpha;         /* slack assertion: (1+alpha)^2 |p| zero-free */
    double eps;           /* relative accuracy target */
    int64_t node_budget;  /* <= 0: default 10^8 nodes per root */
    int32_t threads;      /* 0: hardware concurrency */
    int32_t depth_policy; /* 0: bounded degree; 1: connective constant */
    double conn_a;        /* log-n floor factor for policy 1 */
    const int32_t* order; /* optional elimination order, length n */
} ipoly_decay_options;

IPOLY_API void ipoly_decay_options_init(ipoly_decay_options* opts);

typedef struct ipoly_eval_report ipoly_eval_report;

IPOLY_API ipoly_status ipoly_eval_decay(const ipoly_graph* g, const double* re, const double* im,
                                        const ipoly_decay_options* opts, ipoly_eval_report** out);
IPOLY_API void ipoly_eval_report_free(ipoly_eval_report* r);
IPOLY_API void ipoly_eval_report_value(const ipoly_eval_report* r, double* re, double* im);
IPOLY_API int64_t ipoly_eval_report_nodes(const ipoly_eval_report* r);
IPOLY_API int32_t ipoly_eval_report_depth(const ipoly_eval_report* r);
IPOLY_API double ipoly_eval_report_root_bound(const ipoly_eval_report* r);
IPOLY_API size_t ipoly_eval_report_step_count(const ipoly_eval_report* r);
IPOLY_API void ipoly_eval_report_step_ratio(const ipoly_eval_report* r, size_t i, double* re,
                                            double* im);
IPOLY_API ipoly_status ipoly_eval_report_to_json(const ipoly_eval_report* r, char** out_json);

IPOLY_API int32_t ipoly_depth_for(int32_t n, int32_t d, double alpha, double eps);
IPOLY_API double ipoly_error_bound_root(int32_t root_degree, double alpha, int32_t depth);

/* ---------------- region membership / threshold ---------------- */

typedef struct ipoly_membership_result ipoly_membership_result;

IPOLY_API ipoly_status ipoly_membership_test(const ipoly_graph* g, const double* p_abs,
                                             double alpha, int32_t use_exact,
                                             const ipoly_decay_options* opts,
                                             ipoly_membership_result** out);
IPOLY_API void ipoly_membership_result_free(ipoly_membership_result* r);
IPOLY_API int32_t ipoly_membership_in_region(const ipoly_membership_result* r);
IPOLY_API int32_t ipoly_membership_iterations(const ipoly_membership_result* r);
IPOLY_API double ipoly_membership_final_scale(const ipoly_membership_result* r);
IPOLY_API size_t ipoly_membership_gamma_count(const ipoly_membership_result* r);
IPOLY_API double ipoly_membership_gamma(const ipoly_membership_result* r, size_t i);
IPOLY_API ipoly_status ipoly_membership_to_json(const ipoly_membership_result* r, char** out_json);

/* Conservative bracket on the slack of p_abs. eps_rel = 0 with use_exact = 1
 * gives the error-free bracket. */
IPOLY_API ipoly_status ipoly_slack_bounds(const ipoly_graph* g, const double* p_abs, double eps_rel,
                                          double working_alpha, int32_t use_exact,
                                          const ipoly_decay_options* opts, double* lower,
                                          double* upper);

IPOLY_API ipoly_status ipoly_threshold_estimate(const ipoly_graph* g, double alpha,
                                                int32_t use_exact, const ipoly_decay_options* opts,
                                                double* lo, double* hi, int32_t* calls);
IPOLY_API ipoly_status ipoly_threshold_estimate_json(const ipoly_graph* g, double alpha,
                                                     int32_t use_exact,
                                                     const ipoly_decay_options* opts,
                                                     char** out_json);

/* ---------------- variable model / rounding solver ---------------- */

typedef struct ipoly_model ipoly_model;

IPOLY_API ipoly_status ipoly_model_from_json(const char* json_text, ipoly_model** out);
IPOLY_API ipoly_status ipoly_model_from_dimacs(const char* text, double default_marginal,
                                               ipoly_model** out);
IPOLY_API void ipoly_model_free(ipoly_model* vm);
IPOLY_API int32_t ipoly_model_variable_count(const ipoly_model* vm);
IPOLY_API int32_t ipoly_model_event_count(const ipoly_model* vm);
IPOLY_API ipoly_status ipoly_model_event_probability(const ipoly_model* vm, int32_t event,
                                                     double* out);
IPOLY_API ipoly_status ipoly_model_dependency_graph(const ipoly_model* vm, ipoly_graph** out);
IPOLY_API ipoly_status ipoly_model_verify(const ipoly_model* vm, const uint8_t* assignment,
                                          size_t len, int32_t* out_ok);

typedef struct ipoly_lll_result ipoly_lll_result;

IPOLY_API ipoly_status ipoly_lll_round(const ipoly_model* vm, double alpha, int32_t use_exact,
                                       const ipoly_decay_options* opts, ipoly_lll_result** out);
IPOLY_API void ipoly_lll_result_free(ipoly_lll_result* r);
IPOLY_API ipoly_status ipoly_lll_assignment(const ipoly_lll_result* r, uint8_t* out, size_t len);
IPOLY_API int32_t ipoly_lll_step_count(const ipoly_lll_result* r);
IPOLY_API ipoly_status ipoly_lll_to_json(const ipoly_lll_result* r, char** out_json);

/* ---------------- univariate tree recurrence lab ---------------- */

IPOLY_API double ipoly_lambda_prime_c(int32_t d);
IPOLY_API ipoly_status ipoly_lambda_c(int32_t d, double* out);
IPOLY_API ipoly_status ipoly_fixed_points(int32_t d, double lambda, double* x_star,
                                          double* x_dagger, double* f_prime);
IPOLY_API ipoly_status ipoly_contraction_rate(int32_t d, double alpha, int64_t iters, double* out);

typedef struct ipoly_decay_fit ipoly_decay_fit;

IPOLY_API ipoly_status ipoly_decay_scan(int32_t d, const double* alphas, size_t n_alphas,
                                        int64_t iters, ipoly_decay_fit** out);
IPOLY_API void ipoly_decay_fit_free(ipoly_decay_fit* f);
IPOLY_API double ipoly_decay_fit_exponent(const ipoly_decay_fit* f);
IPOLY_API double ipoly_decay_fit_rate(const ipoly_decay_fit* f, size_t i);
IPOLY_API ipoly_status ipoly_decay_fit_to_csv(const ipoly_decay_fit* f, char** out_csv);
IPOLY_API ipoly_status ipoly_decay_fit_to_json(const ipoly_decay_fit* f, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* IPOLY_H */

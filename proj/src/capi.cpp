#include "ipoly/ipoly.h"

#include <cstring>
#include <new>
#include <string>

#include "decay.hpp"
#include "decay_lab.hpp"
#include "error.hpp"
#include "exact.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "lll.hpp"
#include "membership.hpp"

using namespace ipoly;

namespace {

thread_local std::string g_last_error;

ipoly_status status_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return IPOLY_ERR_INVALID_ARGUMENT;
        case ErrorKind::Parse: return IPOLY_ERR_PARSE;
        case ErrorKind::TooLarge: return IPOLY_ERR_TOO_LARGE;
        case ErrorKind::Budget: return IPOLY_ERR_BUDGET;
        case ErrorKind::Singular: return IPOLY_ERR_SINGULAR;
        case ErrorKind::SlackViolation: return IPOLY_ERR_SLACK_VIOLATION;
        case ErrorKind::Infeasible: return IPOLY_ERR_INFEASIBLE;
        case ErrorKind::Internal: return IPOLY_ERR_INTERNAL;
    }
    return IPOLY_ERR_INTERNAL;
}

template <typename Fn>
ipoly_status guarded(Fn&& fn) {
    try {
        fn();
        return IPOLY_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return IPOLY_ERR_TOO_LARGE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return IPOLY_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return IPOLY_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ipoly_status require(bool cond, const char* message) {
    if (cond) return IPOLY_OK;
    g_last_error = message;
    return IPOLY_ERR_INVALID_ARGUMENT;
}

ActivityVector pack_activities(const Graph& g, const double* re, const double* im) {
    const size_t n = static_cast<size_t>(g.vertex_count());
    ActivityVector p(n);
    for (size_t i = 0; i < n; ++i) p[i] = Complex(re[i], im ? im[i] : 0.0);
    return p;
}

std::vector<double> pack_reals(const Graph& g, const double* p_abs) {
    return std::vector<double>(p_abs, p_abs + g.vertex_count());
}

decay::DecayParams unpack_options(const Graph& g, const ipoly_decay_options* opts) {
    decay::DecayParams params;
    if (!opts) return params;
    params.depth = opts->depth;
    params.alpha = opts->alpha;
    params.eps = opts->eps;
    if (opts->node_budget > 0) params.node_budget = opts->node_budget;
    params.threads = opts->threads;
    params.policy = opts->depth_policy == 1 ? decay::DepthPolicy::ConnectiveConstant
                                            : decay::DepthPolicy::BoundedDegree;
    if (opts->conn_a > 0.0) params.conn_a = opts->conn_a;
    if (opts->order)
        params.order.assign(opts->order, opts->order + g.vertex_count());
    return params;
}

} // namespace

struct ipoly_graph {
    Graph g;
};
struct ipoly_eval_report {
    decay::EvalReport report;
};
struct ipoly_membership_result {
    member::MembershipResult result;
};
struct ipoly_model {
    lll::VariableModel vm;
};
struct ipoly_lll_result {
    lll::RoundingTrace trace;
};
struct ipoly_decay_fit {
    lab::DecayFit fit;
    int d;
};

extern "C" {

const char* ipoly_version(void) { return "1.0.0"; }

const char* ipoly_status_name(ipoly_status status) {
    switch (status) {
        case IPOLY_OK: return "ok";
        case IPOLY_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case IPOLY_ERR_PARSE: return "parse";
        case IPOLY_ERR_TOO_LARGE: return "too-large";
        case IPOLY_ERR_BUDGET: return "budget";
        case IPOLY_ERR_SINGULAR: return "singularity";
        case IPOLY_ERR_SLACK_VIOLATION: return "slack-violation";
        case IPOLY_ERR_INFEASIBLE: return "infeasible";
        case IPOLY_ERR_INTERNAL: return "internal";
    }
    return "internal";
}

const char* ipoly_last_error(void) { return g_last_error.c_str(); }

void ipoly_string_free(char* s) { delete[] s; }

ipoly_status ipoly_graph_create(int32_t n, const int32_t* edge_pairs, size_t edge_count,
                                ipoly_graph** out) {
    if (ipoly_status s = require(out && (edge_count == 0 || edge_pairs), "null argument"); s) return s;
    return guarded([&] {
        std::vector<std::pair<int, int>> edges(edge_count);
        for (size_t i = 0; i < edge_count; ++i)
            edges[i] = {edge_pairs[2 * i], edge_pairs[2 * i + 1]};
        *out = new ipoly_graph{Graph::build(n, edges)};
    });
}

ipoly_status ipoly_graph_from_json(const char* json_text, ipoly_graph** out) {
    if (ipoly_status s = require(json_text && out, "null argument"); s) return s;
    return guarded([&] { *out = new ipoly_graph{io::parse_graph_json(json_text)}; });
}

void ipoly_graph_free(ipoly_graph* g) { delete g; }

int32_t ipoly_graph_vertex_count(const ipoly_graph* g) { return g->g.vertex_count(); }
int32_t ipoly_graph_edge_count(const ipoly_graph* g) { return g->g.edge_count(); }
int32_t ipoly_graph_degree(const ipoly_graph* g, int32_t v) {
    if (v < 0 || v >= g->g.vertex_count()) return -1;
    return g->g.degree(v);
}
int32_t ipoly_graph_max_degree(const ipoly_graph* g) { return g->g.max_degree(); }

ipoly_status ipoly_graph_count_saw(const ipoly_graph* g, int32_t v, int32_t length, uint64_t* out) {
    if (ipoly_status s = require(g && out, "null argument"); s) return s;
    return guarded([&] { *out = count_saw(g->g, v, length); });
}

ipoly_status ipoly_activities_from_json(const char* json_text, size_t expected_n, double* re,
                                        double* im) {
    if (ipoly_status s = require(json_text && re, "null argument"); s) return s;
    return guarded([&] {
        const ActivityVector p = io::parse_activities_json(json_text, expected_n);
        for (size_t i = 0; i < p.size(); ++i) {
            re[i] = p[i].real();
            if (im)
                im[i] = p[i].imag();
            else if (p[i].imag() != 0.0)
                fail(ErrorKind::Parse, "complex activity where a real one is required");
        }
    });
}

ipoly_status ipoly_eval_exact(const ipoly_graph* g, const double* re, const double* im,
                              double* out_re, double* out_im) {
    if (ipoly_status s = require(g && re && out_re && out_im, "null argument"); s) return s;
    return guarded([&] {
        VertexSubset full(g->g.vertex_count(), true);
        const Complex q = exact::breve_q_exact(g->g, pack_activities(g->g, re, im), full);
        *out_re = q.real();
        *out_im = q.imag();
    });
}

ipoly_status ipoly_eval_exact_json(const ipoly_graph* g, const double* re, const double* im,
                                   char** out_json) {
    if (ipoly_status s = require(g && re && out_json, "null argument"); s) return s;
    return guarded([&] {
        VertexSubset full(g->g.vertex_count(), true);
        const Complex q = exact::breve_q_exact(g->g, pack_activities(g->g, re, im), full);
        *out_json = dup_string(io::eval_value_json(q));
    });
}

ipoly_status ipoly_membership_exact(const ipoly_graph* g, const double* p_abs, int32_t* out_member) {
    if (ipoly_status s = require(g && p_abs && out_member, "null argument"); s) return s;
    return guarded([&] { *out_member = exact::membership_exact(g->g, pack_reals(g->g, p_abs)); });
}

ipoly_status ipoly_first_root_on_ray(const ipoly_graph* g, const double* p_abs, double t_max,
                                     double tol, int32_t* out_found, double* out_t) {
    if (ipoly_status s = require(g && p_abs && out_found && out_t, "null argument"); s) return s;
    return guarded([&] {
        const auto root = exact::first_root_on_ray(g->g, pack_reals(g->g, p_abs), t_max, tol);
        *out_found = root.has_value();
        *out_t = root.value_or(0.0);
    });
}

void ipoly_decay_options_init(ipoly_decay_options* opts) {
    if (!opts) return;
    opts->depth = -1;
    opts->alpha = 0.0;
    opts->eps = 0.0;
    opts->node_budget = 0;
    opts->threads = 0;
    opts->depth_policy = 0;
    opts->conn_a = 0.0;
    opts->order = nullptr;
}

ipoly_status ipoly_eval_decay(const ipoly_graph* g, const double* re, const double* im,
                              const ipoly_decay_options* opts, ipoly_eval_report** out) {
    if (ipoly_status s = require(g && re && out, "null argument"); s) return s;
    return guarded([&] {
        const decay::DecayParams params = unpack_options(g->g, opts);
        *out = new ipoly_eval_report{
            decay::eval_polynomial(g->g, pack_activities(g->g, re, im), params)};
    });
}

void ipoly_eval_report_free(ipoly_eval_report* r) { delete r; }

void ipoly_eval_report_value(const ipoly_eval_report* r, double* re, double* im) {
    if (re) *re = r->report.value.real();
    if (im) *im = r->report.value.imag();
}
int64_t ipoly_eval_report_nodes(const ipoly_eval_report* r) { return r->report.nodes_expanded; }
int32_t ipoly_eval_report_depth(const ipoly_eval_report* r) { return r->report.depth_used; }
double ipoly_eval_report_root_bound(const ipoly_eval_report* r) {
    return r->report.apriori_root_bound;
}
size_t ipoly_eval_report_step_count(const ipoly_eval_report* r) {
    return r->report.step_ratios.size();
}
void ipoly_eval_report_step_ratio(const ipoly_eval_report* r, size_t i, double* re, double* im) {
    if (i >= r->report.step_ratios.size()) return;
    if (re) *re = r->report.step_ratios[i].real();
    if (im) *im = r->report.step_ratios[i].imag();
}

ipoly_status ipoly_eval_report_to_json(const ipoly_eval_report* r, char** out_json) {
    if (ipoly_status s = require(r && out_json, "null argument"); s) return s;
    return guarded([&] { *out_json = dup_string(io::eval_report_json(r->report)); });
}

int32_t ipoly_depth_for(int32_t n, int32_t d, double alpha, double eps) {
    try {
        return decay::depth_for(n, d, alpha, eps);
    } catch (const Error& e) {
        g_last_error = e.what();
        return -1;
    }
}

double ipoly_error_bound_root(int32_t root_degree, double alpha, int32_t depth) {
    try {
        return decay::error_bound_root(root_degree, alpha, depth);
    } catch (const Error& e) {
        g_last_error = e.what();
        return -1.0;
    }
}

ipoly_status ipoly_membership_test(const ipoly_graph* g, const double* p_abs, double alpha,
                                   int32_t use_exact, const ipoly_decay_options* opts,
                                   ipoly_membership_result** out) {
    if (ipoly_status s = require(g && p_abs && out, "null argument"); s) return s;
    return guarded([&] {
        const auto mode = use_exact ? member::EvalMode::Exact : member::EvalMode::Decay;
        *out = new ipoly_membership_result{
            member::test_membership(g->g, pack_reals(g->g, p_abs), alpha, mode,
                                    unpack_options(g->g, opts))};
    });
}

void ipoly_membership_result_free(ipoly_membership_result* r) { delete r; }

int32_t ipoly_membership_in_region(const ipoly_membership_result* r) {
    return r->result.verdict == member::Verdict::InRegion;
}
int32_t ipoly_membership_iterations(const ipoly_membership_result* r) {
    return r->result.iterations;
}
double ipoly_membership_final_scale(const ipoly_membership_result* r) {
    return r->result.final_scale;
}
size_t ipoly_membership_gamma_count(const ipoly_membership_result* r) {
    return r->result.gamma_history.size();
}
double ipoly_membership_gamma(const ipoly_membership_result* r, size_t i) {
    return i < r->result.gamma_history.size() ? r->result.gamma_history[i] : 0.0;
}

ipoly_status ipoly_membership_to_json(const ipoly_membership_result* r, char** out_json) {
    if (ipoly_status s = require(r && out_json, "null argument"); s) return s;
    return guarded([&] { *out_json = dup_string(io::membership_json(r->result)); });
}

ipoly_status ipoly_slack_bounds(const ipoly_graph* g, const double* p_abs, double eps_rel,
                                double working_alpha, int32_t use_exact,
                                const ipoly_decay_options* opts, double* lower, double* upper) {
    if (ipoly_status s = require(g && p_abs && lower && upper, "null argument"); s) return s;
    return guarded([&] {
        const auto mode = use_exact ? member::EvalMode::Exact : member::EvalMode::Decay;
        const member::SlackBracket b = member::slack_bounds(
            g->g, pack_reals(g->g, p_abs), eps_rel, working_alpha, mode, unpack_options(g->g, opts));
        *lower = b.lower;
        *upper = b.upper;
    });
}

ipoly_status ipoly_threshold_estimate(const ipoly_graph* g, double alpha, int32_t use_exact,
                                      const ipoly_decay_options* opts, double* lo, double* hi,
                                      int32_t* calls) {
    if (ipoly_status s = require(g && lo && hi, "null argument"); s) return s;
    return guarded([&] {
        const auto mode = use_exact ? member::EvalMode::Exact : member::EvalMode::Decay;
        const member::ThresholdBracket b =
            member::estimate_lambda_G(g->g, alpha, mode, unpack_options(g->g, opts));
        *lo = b.lo;
        *hi = b.hi;
        if (calls) *calls = b.membership_calls;
    });
}

ipoly_status ipoly_threshold_estimate_json(const ipoly_graph* g, double alpha, int32_t use_exact,
                                           const ipoly_decay_options* opts, char** out_json) {
    if (ipoly_status s = require(g && out_json, "null argument"); s) return s;
    return guarded([&] {
        const auto mode = use_exact ? member::EvalMode::Exact : member::EvalMode::Decay;
        const member::ThresholdBracket b =
            member::estimate_lambda_G(g->g, alpha, mode, unpack_options(g->g, opts));
        *out_json = dup_string(io::threshold_json(b, alpha));
    });
}

ipoly_status ipoly_model_from_json(const char* json_text, ipoly_model** out) {
    if (ipoly_status s = require(json_text && out, "null argument"); s) return s;
    return guarded([&] { *out = new ipoly_model{io::parse_model_json(json_text)}; });
}

ipoly_status ipoly_model_from_dimacs(const char* text, double default_marginal, ipoly_model** out) {
    if (ipoly_status s = require(text && out, "null argument"); s) return s;
    return guarded([&] { *out = new ipoly_model{io::parse_dimacs(text, default_marginal)}; });
}

void ipoly_model_free(ipoly_model* vm) { delete vm; }

int32_t ipoly_model_variable_count(const ipoly_model* vm) { return vm->vm.m; }
int32_t ipoly_model_event_count(const ipoly_model* vm) {
    return static_cast<int32_t>(vm->vm.events.size());
}

ipoly_status ipoly_model_event_probability(const ipoly_model* vm, int32_t event, double* out) {
    if (ipoly_status s = require(vm && out, "null argument"); s) return s;
    if (ipoly_status s = require(event >= 0 && event < ipoly_model_event_count(vm),
                                 "event index out of range");
        s)
        return s;
    return guarded([&] {
        *out = lll::event_probability(vm->vm.events[static_cast<size_t>(event)], vm->vm.z);
    });
}

ipoly_status ipoly_model_dependency_graph(const ipoly_model* vm, ipoly_graph** out) {
    if (ipoly_status s = require(vm && out, "null argument"); s) return s;
    return guarded([&] { *out = new ipoly_graph{vm->vm.dependency}; });
}

ipoly_status ipoly_model_verify(const ipoly_model* vm, const uint8_t* assignment, size_t len,
                                int32_t* out_ok) {
    if (ipoly_status s = require(vm && assignment && out_ok, "null argument"); s) return s;
    return guarded([&] {
        *out_ok = lll::verify_assignment(vm->vm, std::vector<uint8_t>(assignment, assignment + len));
    });
}

ipoly_status ipoly_lll_round(const ipoly_model* vm, double alpha, int32_t use_exact,
                             const ipoly_decay_options* opts, ipoly_lll_result** out) {
    if (ipoly_status s = require(vm && out, "null argument"); s) return s;
    return guarded([&] {
        const auto mode = use_exact ? member::EvalMode::Exact : member::EvalMode::Decay;
        decay::DecayParams params =
            unpack_options(vm->vm.dependency, opts);
        *out = new ipoly_lll_result{lll::round_variables(vm->vm, alpha, mode, params)};
    });
}

void ipoly_lll_result_free(ipoly_lll_result* r) { delete r; }

ipoly_status ipoly_lll_assignment(const ipoly_lll_result* r, uint8_t* out, size_t len) {
    if (ipoly_status s = require(r && out, "null argument"); s) return s;
    if (ipoly_status s = require(len >= r->trace.assignment.size(), "buffer too small"); s) return s;
    std::memcpy(out, r->trace.assignment.data(), r->trace.assignment.size());
    return IPOLY_OK;
}

int32_t ipoly_lll_step_count(const ipoly_lll_result* r) {
    return static_cast<int32_t>(r->trace.steps.size());
}

ipoly_status ipoly_lll_to_json(const ipoly_lll_result* r, char** out_json) {
    if (ipoly_status s = require(r && out_json, "null argument"); s) return s;
    return guarded([&] { *out_json = dup_string(io::lll_json(r->trace, true)); });
}

double ipoly_lambda_prime_c(int32_t d) {
    try {
        return lab::lambda_prime_c(d);
    } catch (const Error& e) {
        g_last_error = e.what();
        return -1.0;
    }
}

ipoly_status ipoly_lambda_c(int32_t d, double* out) {
    if (ipoly_status s = require(out != nullptr, "null argument"); s) return s;
    return guarded([&] { *out = lab::lambda_c(d); });
}

ipoly_status ipoly_fixed_points(int32_t d, double lambda, double* x_star, double* x_dagger,
                                double* f_prime) {
    if (ipoly_status s = require(x_star && x_dagger && f_prime, "null argument"); s) return s;
    return guarded([&] {
        const lab::FixedPoints fp = lab::fixed_points(d, lambda);
        *x_star = fp.x_star;
        *x_dagger = fp.x_dagger;
        *f_prime = fp.f_prime_at_star;
    });
}

ipoly_status ipoly_contraction_rate(int32_t d, double alpha, int64_t iters, double* out) {
    if (ipoly_status s = require(out != nullptr, "null argument"); s) return s;
    return guarded([&] { *out = lab::contraction_rate(d, alpha, iters); });
}

ipoly_status ipoly_decay_scan(int32_t d, const double* alphas, size_t n_alphas, int64_t iters,
                              ipoly_decay_fit** out) {
    if (ipoly_status s = require(alphas && out, "null argument"); s) return s;
    return guarded([&] {
        std::vector<double> grid(alphas, alphas + n_alphas);
        *out = new ipoly_decay_fit{lab::scaling_fit(d, grid, iters), d};
    });
}

void ipoly_decay_fit_free(ipoly_decay_fit* f) { delete f; }

double ipoly_decay_fit_exponent(const ipoly_decay_fit* f) { return f->fit.fitted_exponent; }
double ipoly_decay_fit_rate(const ipoly_decay_fit* f, size_t i) {
    return i < f->fit.rates.size() ? f->fit.rates[i] : 0.0;
}

ipoly_status ipoly_decay_fit_to_csv(const ipoly_decay_fit* f, char** out_csv) {
    if (ipoly_status s = require(f && out_csv, "null argument"); s) return s;
    return guarded([&] { *out_csv = dup_string(io::decay_fit_csv(f->fit)); });
}

ipoly_status ipoly_decay_fit_to_json(const ipoly_decay_fit* f, char** out_json) {
    if (ipoly_status s = require(f && out_json, "null argument"); s) return s;
    return guarded([&] { *out_json = dup_string(io::decay_fit_json(f->fit, f->d)); });
}

} // extern "C"

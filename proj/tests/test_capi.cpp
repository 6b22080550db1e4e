#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "ipoly/ipoly.h"

namespace {

struct Graph {
    ipoly_graph* g = nullptr;
    ~Graph() { ipoly_graph_free(g); }
};

struct Str {
    char* s = nullptr;
    ~Str() { ipoly_string_free(s); }
};

void make_path3(Graph& out) {
    const int32_t edges[] = {0, 1, 1, 2};
    REQUIRE(ipoly_graph_create(3, edges, 2, &out.g) == IPOLY_OK);
}

} // namespace

TEST_CASE("graph lifecycle and errors") {
    Graph g;
    make_path3(g);
    CHECK(ipoly_graph_vertex_count(g.g) == 3);
    CHECK(ipoly_graph_edge_count(g.g) == 2);
    CHECK(ipoly_graph_max_degree(g.g) == 2);
    uint64_t walks = 0;
    CHECK(ipoly_graph_count_saw(g.g, 1, 1, &walks) == IPOLY_OK);
    CHECK(walks == 2);

    ipoly_graph* bad = nullptr;
    const int32_t loop[] = {0, 0};
    CHECK(ipoly_graph_create(1, loop, 1, &bad) == IPOLY_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(ipoly_last_error()) > 0);

    ipoly_graph* parsed = nullptr;
    CHECK(ipoly_graph_from_json("{\"n\": 2, \"edges\": [[0,1]]}", &parsed) == IPOLY_OK);
    CHECK(ipoly_graph_vertex_count(parsed) == 2);
    ipoly_graph_free(parsed);
    CHECK(ipoly_graph_from_json("nope", &parsed) == IPOLY_ERR_PARSE);
}

TEST_CASE("exact evaluation through the C surface") {
    Graph g;
    make_path3(g);
    const double re[] = {0.2, 0.2, 0.2};
    double out_re = 0, out_im = 0;
    REQUIRE(ipoly_eval_exact(g.g, re, nullptr, &out_re, &out_im) == IPOLY_OK);
    CHECK(out_re == doctest::Approx(0.44).epsilon(1e-14));
    CHECK(out_im == 0.0);

    Str json;
    REQUIRE(ipoly_eval_exact_json(g.g, re, nullptr, &json.s) == IPOLY_OK);
    CHECK(std::string(json.s).find("\"re\":0.44") != std::string::npos);

    int32_t member = 0;
    const double p_in[] = {0.2, 0.2, 0.2};
    REQUIRE(ipoly_membership_exact(g.g, p_in, &member) == IPOLY_OK);
    CHECK(member == 1);

    int32_t found = 0;
    double root = 0.0;
    REQUIRE(ipoly_first_root_on_ray(g.g, p_in, 8.0, 1e-9, &found, &root) == IPOLY_OK);
    CHECK(found == 1);
    CHECK(root > 1.0);
}

TEST_CASE("decay evaluation reports and determinism across thread counts") {
    Graph g;
    make_path3(g);
    const double re[] = {0.2, 0.2, 0.2};

    ipoly_decay_options opts;
    ipoly_decay_options_init(&opts);
    opts.depth = 3;
    opts.threads = 1;
    ipoly_eval_report* a = nullptr;
    REQUIRE(ipoly_eval_decay(g.g, re, nullptr, &opts, &a) == IPOLY_OK);
    opts.threads = 4;
    ipoly_eval_report* b = nullptr;
    REQUIRE(ipoly_eval_decay(g.g, re, nullptr, &opts, &b) == IPOLY_OK);

    double ar, ai, br, bi;
    ipoly_eval_report_value(a, &ar, &ai);
    ipoly_eval_report_value(b, &br, &bi);
    CHECK(ar == br);
    CHECK(ai == bi);
    CHECK(ar == doctest::Approx(0.44).epsilon(1e-12));
    CHECK(ipoly_eval_report_nodes(a) == ipoly_eval_report_nodes(b));
    CHECK(ipoly_eval_report_step_count(a) == 3);

    Str ja, jb;
    REQUIRE(ipoly_eval_report_to_json(a, &ja.s) == IPOLY_OK);
    REQUIRE(ipoly_eval_report_to_json(b, &jb.s) == IPOLY_OK);
    CHECK(std::string(ja.s) == std::string(jb.s));

    ipoly_eval_report_free(a);
    ipoly_eval_report_free(b);

    // Budget failures surface as status codes with the taxonomy name.
    opts.depth = 64;
    opts.node_budget = 2;
    ipoly_eval_report* c = nullptr;
    const ipoly_status s = ipoly_eval_decay(g.g, re, nullptr, &opts, &c);
    CHECK(s == IPOLY_ERR_BUDGET);
    CHECK(std::string(ipoly_status_name(s)) == "budget");
}

TEST_CASE("membership, slack and threshold through the C surface") {
    Graph g;
    const int32_t edges[] = {0, 1};
    REQUIRE(ipoly_graph_create(2, edges, 1, &g.g) == IPOLY_OK);

    const double inside[] = {0.4, 0.4};
    ipoly_membership_result* r = nullptr;
    REQUIRE(ipoly_membership_test(g.g, inside, 0.1, 1, nullptr, &r) == IPOLY_OK);
    CHECK(ipoly_membership_in_region(r) == 1);
    CHECK(ipoly_membership_final_scale(r) == 1.0);
    CHECK(ipoly_membership_gamma_count(r) == static_cast<size_t>(ipoly_membership_iterations(r)));
    Str json;
    REQUIRE(ipoly_membership_to_json(r, &json.s) == IPOLY_OK);
    CHECK(std::string(json.s).find("\"verdict\":\"in-region\"") != std::string::npos);
    ipoly_membership_result_free(r);

    double lower = 0, upper = 0;
    REQUIRE(ipoly_slack_bounds(g.g, inside, 0.0, 0.0, 1, nullptr, &lower, &upper) == IPOLY_OK);
    CHECK(lower > 0.0);
    CHECK(upper >= lower);

    double lo = 0, hi = 0;
    int32_t calls = 0;
    REQUIRE(ipoly_threshold_estimate(g.g, 0.1, 1, nullptr, &lo, &hi, &calls) == IPOLY_OK);
    CHECK(lo < 0.5);
    CHECK(hi >= 0.5);
    CHECK(calls > 0);
}

TEST_CASE("variable model and rounding through the C surface") {
    ipoly_model* vm = nullptr;
    REQUIRE(ipoly_model_from_dimacs("p cnf 6 2\n1 -2 3 0\n4 5 -6 0\n", 0.5, &vm) == IPOLY_OK);
    CHECK(ipoly_model_variable_count(vm) == 6);
    CHECK(ipoly_model_event_count(vm) == 2);
    double prob = 0.0;
    REQUIRE(ipoly_model_event_probability(vm, 0, &prob) == IPOLY_OK);
    CHECK(prob == doctest::Approx(0.125));

    ipoly_graph* dep = nullptr;
    REQUIRE(ipoly_model_dependency_graph(vm, &dep) == IPOLY_OK);
    CHECK(ipoly_graph_vertex_count(dep) == 2);
    CHECK(ipoly_graph_edge_count(dep) == 0);
    ipoly_graph_free(dep);

    ipoly_lll_result* result = nullptr;
    REQUIRE(ipoly_lll_round(vm, 0.5, 1, nullptr, &result) == IPOLY_OK);
    std::vector<uint8_t> omega(6);
    REQUIRE(ipoly_lll_assignment(result, omega.data(), omega.size()) == IPOLY_OK);
    int32_t ok = 0;
    REQUIRE(ipoly_model_verify(vm, omega.data(), omega.size(), &ok) == IPOLY_OK);
    CHECK(ok == 1);
    Str json;
    REQUIRE(ipoly_lll_to_json(result, &json.s) == IPOLY_OK);
    CHECK(std::string(json.s).find("\"verified\":true") != std::string::npos);
    ipoly_lll_result_free(result);
    ipoly_model_free(vm);
}

TEST_CASE("recurrence lab through the C surface") {
    CHECK(ipoly_lambda_prime_c(3) == doctest::Approx(4.0 / 27.0));
    double lc = 0.0;
    REQUIRE(ipoly_lambda_c(4, &lc) == IPOLY_OK);
    CHECK(lc == doctest::Approx(27.0 / 16.0));
    CHECK(ipoly_lambda_c(2, &lc) == IPOLY_ERR_INVALID_ARGUMENT);

    double xs = 0, xd = 0, fp = 0;
    REQUIRE(ipoly_fixed_points(2, 4.0 / 27.0, &xs, &xd, &fp) == IPOLY_OK);
    CHECK(xs == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK(fp == doctest::Approx(1.0).epsilon(1e-8));

    const double alphas[] = {1e-2, 1e-3};
    ipoly_decay_fit* fit = nullptr;
    REQUIRE(ipoly_decay_scan(2, alphas, 2, 200000, &fit) == IPOLY_OK);
    CHECK(ipoly_decay_fit_exponent(fit) == doctest::Approx(0.5).epsilon(0.25));
    Str csv, json;
    REQUIRE(ipoly_decay_fit_to_csv(fit, &csv.s) == IPOLY_OK);
    CHECK(std::string(csv.s).rfind("alpha,rho,one_minus_rho\n", 0) == 0);
    REQUIRE(ipoly_decay_fit_to_json(fit, &json.s) == IPOLY_OK);
    CHECK(std::string(json.s).find("\"fitted_exponent\"") != std::string::npos);
    ipoly_decay_fit_free(fit);

    CHECK(ipoly_depth_for(10, 3, 0.5, 0.1) == 32);
    CHECK(ipoly_error_bound_root(0, 1.0, 0) == doctest::Approx(1.0));
}

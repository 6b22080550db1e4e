// Command-line front end; talks to the library exclusively through the C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ipoly/ipoly.h"

namespace {

struct CliError {
    ipoly_status status;
    std::string message;
};

[[noreturn]] void bail(ipoly_status status, const std::string& message) {
    throw CliError{status, message};
}

void check(ipoly_status status) {
    if (status != IPOLY_OK) bail(status, ipoly_last_error());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bail(IPOLY_ERR_PARSE, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::fputs(text.c_str(), stdout);
        std::fputc('\n', stdout);
    } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) bail(IPOLY_ERR_PARSE, "cannot open output file: " + output_path);
        out << text << '\n';
    }
}

struct GraphHandle {
    ipoly_graph* g = nullptr;
    ~GraphHandle() { ipoly_graph_free(g); }
};

struct ModelHandle {
    ipoly_model* m = nullptr;
    ~ModelHandle() { ipoly_model_free(m); }
};

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { ipoly_string_free(s); }
};

void load_graph(const std::string& path, GraphHandle& out) {
    const std::string text = read_file(path);
    check(ipoly_graph_from_json(text.c_str(), &out.g));
}

void load_activities(const std::string& path, const GraphHandle& graph, std::vector<double>& re,
                     std::vector<double>& im) {
    const std::string text = read_file(path);
    const size_t n = static_cast<size_t>(ipoly_graph_vertex_count(graph.g));
    re.assign(n, 0.0);
    im.assign(n, 0.0);
    check(ipoly_activities_from_json(text.c_str(), n, re.data(), im.data()));
}

std::vector<int32_t> load_order(const std::string& path, size_t n) {
    const std::string text = read_file(path);
    std::vector<int32_t> order;
    std::string cleaned = text;
    for (char& c : cleaned)
        if (c == '[' || c == ']' || c == ',') c = ' ';
    std::istringstream in(cleaned);
    long v;
    while (in >> v) order.push_back(static_cast<int32_t>(v));
    if (order.size() != n) bail(IPOLY_ERR_PARSE, "elimination order length mismatch");
    return order;
}

std::vector<double> parse_alpha_list(const std::string& list) {
    std::vector<double> out;
    std::string cleaned = list;
    for (char& c : cleaned)
        if (c == ',') c = ' ';
    std::istringstream in(cleaned);
    double v;
    while (in >> v) out.push_back(v);
    if (out.empty()) bail(IPOLY_ERR_INVALID_ARGUMENT, "empty alpha list");
    return out;
}

std::vector<double> magnitudes(const std::vector<double>& re, const std::vector<double>& im) {
    std::vector<double> out(re.size());
    for (size_t i = 0; i < re.size(); ++i) out[i] = std::hypot(re[i], im[i]);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"independence polynomial toolkit"};
    app.require_subcommand(1);

    std::string graph_path, activities_path, order_path, output_path;
    std::string cnf_path, model_path, csv_path;
    std::string alpha_list;
    double alpha = 0.0, eps = 0.1, default_marginal = 0.5;
    int depth = -1, threads = 0, d_degree = 2;
    long long budget = 0, iters = 200000;
    bool exact_mode = false, decay_mode = false;

    CLI::App* eval = app.add_subcommand("eval", "evaluate the polynomial at given activities");
    eval->add_option("--graph", graph_path, "graph JSON file")->required();
    eval->add_option("--activities", activities_path, "activities JSON file")->required();
    eval->add_flag("--exact", exact_mode, "exhaustive subset recursion");
    eval->add_flag("--decay", decay_mode, "truncated-recursion evaluation");
    eval->add_option("--alpha", alpha, "slack assertion for --decay");
    eval->add_option("--eps", eps, "relative accuracy target for --decay");
    eval->add_option("--depth", depth, "explicit recursion depth (overrides --alpha/--eps)");
    eval->add_option("--budget", budget, "node budget per root");
    eval->add_option("--order", order_path, "elimination order file");
    eval->add_option("--threads", threads, "worker thread cap");
    eval->add_option("--output", output_path, "write the result here instead of stdout");

    CLI::App* membership = app.add_subcommand("membership", "test zero-free-region membership");
    membership->add_option("--graph", graph_path, "graph JSON file")->required();
    membership->add_option("--activities", activities_path, "activities JSON file")->required();
    membership->add_option("--alpha", alpha, "decision accuracy")->required();
    membership->add_flag("--exact", exact_mode, "use the exact oracle as the evaluator");
    membership->add_option("--budget", budget, "node budget per root");
    membership->add_option("--threads", threads, "worker thread cap");
    membership->add_option("--output", output_path, "write the result here instead of stdout");

    CLI::App* threshold = app.add_subcommand("threshold", "bracket the uniform activity threshold");
    threshold->add_option("--graph", graph_path, "graph JSON file")->required();
    threshold->add_option("--alpha", alpha, "relative bracket accuracy")->required();
    threshold->add_flag("--exact", exact_mode, "use the exact oracle as the evaluator");
    threshold->add_option("--budget", budget, "node budget per root");
    threshold->add_option("--threads", threads, "worker thread cap");
    threshold->add_option("--output", output_path, "write the result here instead of stdout");

    CLI::App* lll = app.add_subcommand("lll", "round variable-model marginals to an assignment");
    lll->add_option("--cnf", cnf_path, "DIMACS CNF input");
    lll->add_option("--model", model_path, "variable-model JSON input");
    lll->add_option("--alpha", alpha, "slack assertion")->required();
    lll->add_flag("--exact", exact_mode, "use the exact oracle as the evaluator");
    lll->add_option("--z", default_marginal, "default marginal for CNF inputs");
    lll->add_option("--budget", budget, "node budget per root");
    lll->add_option("--threads", threads, "worker thread cap");
    lll->add_option("--output", output_path, "write the result here instead of stdout");

    CLI::App* decay = app.add_subcommand("decay", "univariate recurrence contraction experiment");
    decay->add_option("--d", d_degree, "arity of the recurrence")->required();
    decay->add_option("--alphas", alpha_list, "comma-separated slack grid")->required();
    decay->add_option("--iters", iters, "iteration budget per slack value");
    decay->add_option("--csv", csv_path, "write the measurement CSV here instead of stdout");
    decay->add_option("--output", output_path, "write the fit summary here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        ipoly_decay_options opts;
        ipoly_decay_options_init(&opts);
        opts.depth = depth;
        opts.alpha = alpha;
        opts.eps = eps;
        opts.node_budget = budget;
        opts.threads = threads;

        if (eval->parsed()) {
            if (exact_mode == decay_mode)
                bail(IPOLY_ERR_INVALID_ARGUMENT, "choose exactly one of --exact and --decay");
            GraphHandle graph;
            load_graph(graph_path, graph);
            std::vector<double> re, im;
            load_activities(activities_path, graph, re, im);
            if (exact_mode) {
                OwnedString json;
                check(ipoly_eval_exact_json(graph.g, re.data(), im.data(), &json.s));
                emit(json.s, output_path);
            } else {
                if (depth < 0 && !(alpha > 0.0))
                    bail(IPOLY_ERR_INVALID_ARGUMENT, "--decay needs --alpha/--eps or --depth");
                std::vector<int32_t> order;
                if (!order_path.empty()) {
                    order = load_order(order_path, re.size());
                    opts.order = order.data();
                }
                ipoly_eval_report* report = nullptr;
                check(ipoly_eval_decay(graph.g, re.data(), im.data(), &opts, &report));
                OwnedString json;
                const ipoly_status s = ipoly_eval_report_to_json(report, &json.s);
                ipoly_eval_report_free(report);
                check(s);
                emit(json.s, output_path);
            }
        } else if (membership->parsed()) {
            GraphHandle graph;
            load_graph(graph_path, graph);
            std::vector<double> re, im;
            load_activities(activities_path, graph, re, im);
            const std::vector<double> p_abs = magnitudes(re, im);
            ipoly_membership_result* result = nullptr;
            check(ipoly_membership_test(graph.g, p_abs.data(), alpha, exact_mode, &opts, &result));
            OwnedString json;
            const ipoly_status s = ipoly_membership_to_json(result, &json.s);
            ipoly_membership_result_free(result);
            check(s);
            emit(json.s, output_path);
        } else if (threshold->parsed()) {
            GraphHandle graph;
            load_graph(graph_path, graph);
            OwnedString json;
            check(ipoly_threshold_estimate_json(graph.g, alpha, exact_mode, &opts, &json.s));
            emit(json.s, output_path);
        } else if (lll->parsed()) {
            if (cnf_path.empty() == model_path.empty())
                bail(IPOLY_ERR_INVALID_ARGUMENT, "choose exactly one of --cnf and --model");
            ModelHandle model;
            if (!cnf_path.empty()) {
                const std::string text = read_file(cnf_path);
                check(ipoly_model_from_dimacs(text.c_str(), default_marginal, &model.m));
            } else {
                const std::string text = read_file(model_path);
                check(ipoly_model_from_json(text.c_str(), &model.m));
            }
            ipoly_lll_result* result = nullptr;
            check(ipoly_lll_round(model.m, alpha, exact_mode, &opts, &result));
            OwnedString json;
            const ipoly_status s = ipoly_lll_to_json(result, &json.s);
            ipoly_lll_result_free(result);
            check(s);
            emit(json.s, output_path);
        } else if (decay->parsed()) {
            const std::vector<double> alphas = parse_alpha_list(alpha_list);
            ipoly_decay_fit* fit = nullptr;
            check(ipoly_decay_scan(d_degree, alphas.data(), alphas.size(), iters, &fit));
            OwnedString csv, json;
            ipoly_status s = ipoly_decay_fit_to_csv(fit, &csv.s);
            if (s == IPOLY_OK) s = ipoly_decay_fit_to_json(fit, &json.s);
            ipoly_decay_fit_free(fit);
            check(s);
            emit(csv.s, csv_path);
            emit(json.s, output_path);
        }
        return 0;
    } catch (const CliError& e) {
        std::string out = "{\"error\":{\"kind\":\"";
        out += ipoly_status_name(e.status);
        out += "\",\"message\":\"";
        out += json_escape(e.message);
        out += "\"}}";
        std::fputs(out.c_str(), stdout);
        std::fputc('\n', stdout);
        return 1;
    }
}

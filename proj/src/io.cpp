#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "error.hpp"
#include "json.hpp"

namespace ipoly::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) fail(ErrorKind::Parse, "malformed JSON");
    return doc;
}

double as_number(const json& v, const char* what) {
    if (!v.is_number()) fail(ErrorKind::Parse, std::string(what) + " must be a number");
    return v.get<double>();
}

class Writer {
public:
    Writer& raw(const std::string& s) {
        out_ += s;
        return *this;
    }
    Writer& key(const std::string& k) {
        out_ += '"';
        out_ += k;
        out_ += "\":";
        return *this;
    }
    Writer& number(double x) { return raw(format_double(x)); }
    Writer& integer(long long x) { return raw(std::to_string(x)); }
    Writer& string(const std::string& s) {
        out_ += '"';
        for (char c : s) {
            if (c == '"' || c == '\\') out_ += '\\';
            out_ += c;
        }
        out_ += '"';
        return *this;
    }
    Writer& complex_value(const Complex& z) {
        raw("{");
        key("re").number(z.real()).raw(",");
        key("im").number(z.imag());
        return raw("}");
    }
    const std::string& str() const { return out_; }

private:
    std::string out_;
};

} // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Graph parse_graph_json(const std::string& text) {
    const json doc = parse(text);
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges"))
        fail(ErrorKind::Parse, "graph file must be an object with \"n\" and \"edges\"");
    if (!doc["n"].is_number_integer()) fail(ErrorKind::Parse, "\"n\" must be an integer");
    const int n = doc["n"].get<int>();
    if (!doc["edges"].is_array()) fail(ErrorKind::Parse, "\"edges\" must be an array");
    std::vector<std::pair<int, int>> edges;
    for (const json& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            fail(ErrorKind::Parse, "each edge must be a pair of integers");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph::build(n, edges);
}

ActivityVector parse_activities_json(const std::string& text, size_t expected_n) {
    const json doc = parse(text);
    if (!doc.is_array()) fail(ErrorKind::Parse, "activities file must be a JSON array");
    if (doc.size() != expected_n)
        fail(ErrorKind::Parse, "activities length " + std::to_string(doc.size()) +
                                   " does not match vertex count " + std::to_string(expected_n));
    ActivityVector p;
    p.reserve(doc.size());
    for (const json& v : doc) {
        if (v.is_number()) {
            p.emplace_back(v.get<double>(), 0.0);
        } else if (v.is_object() && v.contains("re") && v.contains("im")) {
            p.emplace_back(as_number(v["re"], "re"), as_number(v["im"], "im"));
        } else {
            fail(ErrorKind::Parse, "activities must be numbers or {\"re\",\"im\"} objects");
        }
    }
    return p;
}

lll::VariableModel parse_model_json(const std::string& text) {
    const json doc = parse(text);
    if (!doc.is_object() || !doc.contains("m") || !doc.contains("events"))
        fail(ErrorKind::Parse, "model file must be an object with \"m\" and \"events\"");
    if (!doc["m"].is_number_integer()) fail(ErrorKind::Parse, "\"m\" must be an integer");
    const int m = doc["m"].get<int>();
    std::vector<double> z(static_cast<size_t>(m), 0.5);
    if (doc.contains("z")) {
        if (!doc["z"].is_array() || doc["z"].size() != static_cast<size_t>(m))
            fail(ErrorKind::Parse, "\"z\" must be an array of length m");
        for (size_t i = 0; i < z.size(); ++i) z[i] = as_number(doc["z"][i], "marginal");
    }
    std::vector<lll::Event> events;
    for (const json& e : doc["events"]) {
        if (e.is_object() && e.contains("clause")) {
            std::vector<int> lits;
            for (const json& l : e["clause"]) {
                if (!l.is_number_integer()) fail(ErrorKind::Parse, "clause literals must be integers");
                lits.push_back(l.get<int>());
            }
            events.push_back(lll::clause_event(lits, m));
        } else if (e.is_object() && e.contains("scope") && e.contains("table")) {
            lll::Event ev;
            for (const json& s : e["scope"]) {
                if (!s.is_number_integer()) fail(ErrorKind::Parse, "scope entries must be integers");
                ev.scope.push_back(s.get<int>());
            }
            for (const json& t : e["table"]) {
                if (t.is_boolean())
                    ev.table.push_back(t.get<bool>() ? 1 : 0);
                else if (t.is_number_integer())
                    ev.table.push_back(t.get<int>() ? 1 : 0);
                else
                    fail(ErrorKind::Parse, "table entries must be 0/1 or booleans");
            }
            events.push_back(std::move(ev));
        } else {
            fail(ErrorKind::Parse, "each event needs either \"clause\" or \"scope\"+\"table\"");
        }
    }
    try {
        return lll::make_model(m, std::move(z), std::move(events));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidArgument) fail(ErrorKind::Parse, e.what());
        throw;
    }
}

lll::VariableModel parse_dimacs(const std::string& text, double default_marginal) {
    std::istringstream in(text);
    std::string line;
    int m = -1, clause_count = -1;
    std::vector<lll::Event> events;
    std::vector<int> current;
    while (std::getline(in, line)) {
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == 'c' || line[pos] == '%') continue;
        if (line[pos] == 'p') {
            std::istringstream head(line.substr(pos));
            std::string p, fmt;
            head >> p >> fmt >> m >> clause_count;
            if (fmt != "cnf" || m < 0 || clause_count < 0)
                fail(ErrorKind::Parse, "malformed DIMACS header");
            continue;
        }
        if (m < 0) fail(ErrorKind::Parse, "clause before the DIMACS header");
        std::istringstream body(line.substr(pos));
        int lit;
        while (body >> lit) {
            if (lit == 0) {
                if (!current.empty()) {
                    events.push_back(lll::clause_event(current, m));
                    current.clear();
                }
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) events.push_back(lll::clause_event(current, m));
    if (m < 0) fail(ErrorKind::Parse, "missing DIMACS header");
    if (clause_count >= 0 && events.size() != static_cast<size_t>(clause_count))
        fail(ErrorKind::Parse, "clause count does not match the header");
    if (!(default_marginal >= 0.0) || !(default_marginal <= 1.0))
        fail(ErrorKind::InvalidArgument, "default marginal must lie in [0,1]");
    return lll::make_model(m, std::vector<double>(static_cast<size_t>(m), default_marginal),
                           std::move(events));
}

std::string eval_value_json(const Complex& value) {
    Writer w;
    w.raw("{").key("value").complex_value(value).raw("}");
    return w.str();
}

std::string eval_report_json(const decay::EvalReport& report) {
    Writer w;
    w.raw("{");
    w.key("value").complex_value(report.value).raw(",");
    w.key("nodes_expanded").integer(report.nodes_expanded).raw(",");
    w.key("depth_used").integer(report.depth_used).raw(",");
    if (std::isfinite(report.apriori_root_bound))
        w.key("apriori_root_bound").number(report.apriori_root_bound).raw(",");
    w.key("step_ratios").raw("[");
    for (size_t i = 0; i < report.step_ratios.size(); ++i) {
        if (i) w.raw(",");
        w.complex_value(report.step_ratios[i]);
    }
    w.raw("],");
    w.key("step_factors").raw("[");
    for (size_t i = 0; i < report.step_factors.size(); ++i) {
        if (i) w.raw(",");
        w.complex_value(report.step_factors[i]);
    }
    w.raw("]}");
    return w.str();
}

std::string membership_json(const member::MembershipResult& result) {
    Writer w;
    w.raw("{");
    w.key("verdict").string(result.verdict == member::Verdict::InRegion ? "in-region" : "scaled-out")
        .raw(",");
    w.key("iterations").integer(result.iterations).raw(",");
    w.key("final_scale").number(result.final_scale).raw(",");
    w.key("gamma_history").raw("[");
    for (size_t i = 0; i < result.gamma_history.size(); ++i) {
        if (i) w.raw(",");
        w.number(result.gamma_history[i]);
    }
    w.raw("]}");
    return w.str();
}

std::string threshold_json(const member::ThresholdBracket& bracket, double alpha) {
    Writer w;
    w.raw("{");
    w.key("lo").number(bracket.lo).raw(",");
    w.key("hi").number(bracket.hi).raw(",");
    w.key("alpha").number(alpha).raw(",");
    w.key("membership_calls").integer(bracket.membership_calls);
    w.raw("}");
    return w.str();
}

std::string lll_json(const lll::RoundingTrace& trace, bool verified) {
    Writer w;
    w.raw("{");
    w.key("assignment").raw("[");
    for (size_t i = 0; i < trace.assignment.size(); ++i) {
        if (i) w.raw(",");
        w.integer(trace.assignment[i]);
    }
    w.raw("],");
    w.key("verified").raw(verified ? "true" : "false").raw(",");
    w.key("preprocessed").raw("[");
    for (size_t i = 0; i < trace.preprocessed.size(); ++i) {
        if (i) w.raw(",");
        w.raw("{").key("variable").integer(trace.preprocessed[i].first).raw(",");
        w.key("value").integer(trace.preprocessed[i].second).raw("}");
    }
    w.raw("],");
    w.key("trace").raw("[");
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const lll::RoundingStep& s = trace.steps[i];
        if (i) w.raw(",");
        w.raw("{");
        w.key("variable").integer(s.variable).raw(",");
        w.key("scale").number(s.scale).raw(",");
        w.key("delta").number(s.delta).raw(",");
        w.key("eps").number(s.eps).raw(",");
        w.key("q0").number(s.q0).raw(",");
        w.key("q_delta").number(s.q_delta).raw(",");
        w.key("derivative").number(s.derivative).raw(",");
        w.key("direction").integer(s.direction).raw(",");
        w.key("working_slack").number(s.working_slack);
        w.raw("}");
    }
    w.raw("]}");
    return w.str();
}

std::string decay_fit_json(const lab::DecayFit& fit, int d) {
    Writer w;
    w.raw("{");
    w.key("d").integer(d).raw(",");
    w.key("alphas").raw("[");
    for (size_t i = 0; i < fit.alphas.size(); ++i) {
        if (i) w.raw(",");
        w.number(fit.alphas[i]);
    }
    w.raw("],");
    w.key("rates").raw("[");
    for (size_t i = 0; i < fit.rates.size(); ++i) {
        if (i) w.raw(",");
        w.number(fit.rates[i]);
    }
    w.raw("],");
    w.key("fitted_exponent").number(fit.fitted_exponent).raw(",");
    w.key("fitted_coefficient").number(fit.fitted_coefficient).raw(",");
    w.key("window_start_max").integer(fit.window_start_max).raw(",");
    w.key("window_error_max").number(fit.window_error_max);
    w.raw("}");
    return w.str();
}

std::string decay_fit_csv(const lab::DecayFit& fit) {
    std::string out = "alpha,rho,one_minus_rho\n";
    for (size_t i = 0; i < fit.alphas.size(); ++i) {
        out += format_double(fit.alphas[i]);
        out += ',';
        out += format_double(fit.rates[i]);
        out += ',';
        out += format_double(1.0 - fit.rates[i]);
        out += '\n';
    }
    return out;
}

std::string error_json(const std::string& kind, const std::string& message) {
    Writer w;
    w.raw("{").key("error").raw("{");
    w.key("kind").string(kind).raw(",");
    w.key("message").string(message);
    w.raw("}}");
    return w.str();
}

} // namespace ipoly::io

#pragma once

#include <string>
#include <vector>

#include "decay.hpp"
#include "decay_lab.hpp"
#include "graph.hpp"
#include "lll.hpp"
#include "membership.hpp"

namespace ipoly::io {

// Numbers are emitted with %.17g so every double round-trips exactly and
// identical runs produce byte-identical output.
std::string format_double(double x);

// Graph file: {"n": int, "edges": [[u,v], ...]}.
Graph parse_graph_json(const std::string& text);

// Activities file: array of length n whose entries are reals or
// {"re": x, "im": y} objects.
ActivityVector parse_activities_json(const std::string& text, size_t expected_n);

// Model file: {"m": int, "z": [...], "events": [{"scope": [...], "table": [...]}
// | {"clause": [...]}, ...]}; z defaults to 1/2 everywhere.
lll::VariableModel parse_model_json(const std::string& text);

// DIMACS CNF; every clause becomes a clause-falsified event with the given
// default marginal on all variables.
lll::VariableModel parse_dimacs(const std::string& text, double default_marginal);

std::string eval_value_json(const Complex& value);
std::string eval_report_json(const decay::EvalReport& report);
std::string membership_json(const member::MembershipResult& result);
std::string threshold_json(const member::ThresholdBracket& bracket, double alpha);
std::string lll_json(const lll::RoundingTrace& trace, bool verified);
std::string decay_fit_json(const lab::DecayFit& fit, int d);
std::string decay_fit_csv(const lab::DecayFit& fit);
std::string error_json(const std::string& kind, const std::string& message);

} // namespace ipoly::io

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "graph.hpp"
#include "membership.hpp"

namespace ipoly::lll {

// An event over binary variables: it occurs exactly on the scope assignments
// whose table entry is 1. Bit j of a table key is the value of scope[j].
struct Event {
    std::vector<int> scope;       // sorted variable indices
    std::vector<uint8_t> table;   // size 1 << scope.size()
};

inline constexpr int kScopeLimit = 24;

// Event that occurs when every literal of the clause is false. Literals use
// the DIMACS convention: +v means variable v-1 true, -v means it false.
Event clause_event(std::span<const int> literals, int variable_count);

struct VariableModel {
    int m = 0;                    // number of binary variables
    std::vector<double> z;        // marginals in [0,1]
    std::vector<Event> events;
    Graph dependency;             // edge iff scopes intersect
};

VariableModel make_model(int m, std::vector<double> z, std::vector<Event> events);

Graph build_dependency_graph(const std::vector<Event>& events);

// Exact occurrence probability of the event under independent marginals z,
// by summation over the scope assignments.
double event_probability(const Event& ev, const std::vector<double>& z);

std::vector<double> event_probabilities(const VariableModel& vm, const std::vector<double>& z);

bool verify_assignment(const VariableModel& vm, const std::vector<uint8_t>& omega);

// Rounds the marginals one variable at a time using exact derivative signs;
// every intermediate probability vector is checked against the full region
// sweep. Restricted to models whose dependency graph fits the exact oracle.
std::vector<uint8_t> round_variables_exact(const VariableModel& vm);

struct RoundingStep {
    int variable = -1;
    double scale = 1.0;        // evaluation scale for this iteration
    double delta = 0.0;        // finite-difference step on the marginal
    double eps = 0.0;          // evaluator accuracy used for the two calls
    double q0 = 0.0;           // estimate at p(z)
    double q_delta = 0.0;      // estimate at p(z - delta * e_i)
    double derivative = 0.0;   // (q0 - q_delta) / delta
    int direction = 0;         // rounded value of the variable
    double working_slack = 0.0;
};

struct RoundingTrace {
    std::vector<std::pair<int, int>> preprocessed; // (variable, value) fixed up front
    std::vector<RoundingStep> steps;
    std::vector<uint8_t> assignment;
};

// Slack-preserving rounding: preprocesses near-integral marginals, then for
// each remaining variable estimates the discrete derivative of q at the
// scaled probability vector and rounds toward the nonnegative side. The
// caller asserts that (1+alpha) * p(z) lies in the region.
RoundingTrace round_variables(const VariableModel& vm, double alpha, member::EvalMode mode,
                              const decay::DecayParams& params = {});

} // namespace ipoly::lll

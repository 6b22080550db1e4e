#pragma once

#include <vector>

#include "decay.hpp"
#include "graph.hpp"

namespace ipoly::member {

enum class EvalMode { Exact, Decay };

struct SlackBracket {
    double lower = 0.0;
    double upper = 0.0;
};

// Conservative bracket on the slack of p_abs built from one-sided estimates
// of the vertex-marginal ratios. working_alpha is the slack the caller
// guarantees for the evaluator runs (ignored in exact mode). eps_rel is the
// evaluator's relative accuracy; 0 selects error-free estimates.
SlackBracket slack_bounds(const Graph& g, const std::vector<double>& p_abs, double eps_rel,
                          double working_alpha, EvalMode mode,
                          const decay::DecayParams& params = {});

enum class Verdict { InRegion, ScaledOut };

struct MembershipResult {
    Verdict verdict = Verdict::ScaledOut;
    int iterations = 0;
    double final_scale = 0.0;
    std::vector<double> gamma_history;
};

// Scaling protocol: start from p/(2n), estimate the slack proxy gamma, stop
// with ScaledOut when it drops below alpha/(2n), otherwise grow the scale by
// (1 + alpha/(6n)) until it reaches 1. InRegion certifies p in the region;
// ScaledOut certifies (1+alpha)p outside; both may be valid in between.
MembershipResult test_membership(const Graph& g, const std::vector<double>& p_abs, double alpha,
                                 EvalMode mode, const decay::DecayParams& params = {});

struct ThresholdBracket {
    double lo = 0.0;
    double hi = 0.0;
    int membership_calls = 0;
};

// Geometric bisection on the uniform activity using test_membership; the
// returned bracket contains the smallest uniform zero magnitude and satisfies
// hi/lo <= (1+alpha)^2.
ThresholdBracket estimate_lambda_G(const Graph& g, double alpha, EvalMode mode,
                                   const decay::DecayParams& params = {});

} // namespace ipoly::member

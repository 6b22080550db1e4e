#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "graph.hpp"

namespace ipoly::decay {

enum class DepthPolicy { BoundedDegree, ConnectiveConstant };

struct DecayParams {
    int depth = -1;               // < 0: derive from alpha/eps via the policy
    double alpha = 0.0;           // slack assertion (see fptas_eval contract)
    double eps = 0.0;             // relative accuracy target
    long long node_budget = 100'000'000; // per-root computation-tree node cap
    DepthPolicy policy = DepthPolicy::BoundedDegree;
    double conn_a = 1.0;          // log-n depth floor factor of the connective policy
    std::vector<int> order;       // optional elimination order (permutation of 0..n-1)
    int threads = 0;              // 0: hardware concurrency
};

struct EvalReport {
    Complex value{1.0, 0.0};
    std::vector<Complex> step_ratios;   // R at each elimination root
    std::vector<Complex> step_factors;  // 1 - R, multiplied in order
    long long nodes_expanded = 0;
    int depth_used = 0;
    double apriori_root_bound = std::numeric_limits<double>::quiet_NaN();
};

// Recursion depth for an n-vertex graph of maximum degree d so that the
// truncated product is within relative eps under the (1+alpha)^2 slack
// contract.
int depth_for(int n, int d, double alpha, double eps);

// Depth for families of bounded connective constant: the larger of a*ln(n)
// and (4/sqrt(alpha))*ln(n/(eps*alpha)).
int depth_for_connective(int n, double a, double alpha, double eps);

// Upper bound on the truncation error of a depth-ell root ratio whose root
// vertex has degree root_degree.
double error_bound_root(int root_degree, double alpha, int ell);

using NodeObserver = std::function<void(uint64_t subset_mask, int vertex, int depth, Complex ratio)>;

// Truncated occupation-ratio recursion: returns 0 at depth 0, otherwise
// p_u / prod over child subproblems of (1 - R_child). `subset` is mutated
// during the call and restored on normal return. Each visited node decrements
// `budget` and increments `nodes`.
Complex occupation_ratio_truncated(const Graph& g, const ActivityVector& p, int ell,
                                   VertexSubset& subset, int u, long long& budget,
                                   long long& nodes, const NodeObserver& observer = nullptr);

// Telescoping product over all vertices of `domain` in ascending order;
// single-threaded building block for subset-restricted evaluations.
Complex eval_breve_subset(const Graph& g, const ActivityVector& p, const VertexSubset& domain,
                          int ell, long long node_budget, long long* nodes_out = nullptr);

// Full evaluation of q at p: product over elimination roots, each root's
// ratio computed by the truncated recursion. Roots are independent and may
// run on params.threads workers; the reduction is performed in elimination
// order so the result does not depend on the schedule.
EvalReport eval_polynomial(const Graph& g, const ActivityVector& p, const DecayParams& params,
                           const NodeObserver& observer = nullptr);

// Caller contract: (1+alpha)^2 * |p| lies in the zero-free region. For the
// single-factor contract (1+a)|p| in region, pass alpha = sqrt(1+a) - 1.
EvalReport fptas_eval(const Graph& g, const ActivityVector& p, double alpha, double eps,
                      DecayParams params = {});

struct NodeSensitivity {
    int vertex = -1;
    int depth = 0;     // distance from the root subproblem
    int degree = 0;    // degree of `vertex` in the graph
    bool truncated = false;
    double rho = 0.0;        // ratio magnitude recursion at |p|
    double beta = 0.0;       // d/dt of rho((1+t)|p|) at t = 0
    double rho_prime = 0.0;  // rho at (1+alpha)|p|
    double beta_prime = 0.0; // beta at (1+alpha)|p|
};

struct SensitivityReport {
    NodeSensitivity root;
    std::vector<NodeSensitivity> nodes; // every node of the truncated tree
    long long nodes_visited = 0;
    // Aggregates over the non-truncated nodes.
    double rho_min = 0.0, rho_max = 0.0;
    double beta_min = 0.0, beta_max = 0.0;
};

// Joint (rho, beta) profile over the depth-ell tree rooted at (V, root),
// evaluated at |p| and at (1+alpha)|p| on the same tree shape. Truncated
// leaves carry rho = beta = 0.
SensitivityReport sensitivity_profile(const Graph& g, const ActivityVector& p, double alpha,
                                      int root, int ell);

// (rho, beta) of the subproblem (subset, u) with natural termination (no
// depth cutoff); exact counterpart used by instrumented checks.
std::pair<double, double> exact_node_sensitivity(const Graph& g, const std::vector<double>& p_abs,
                                                 VertexSubset& subset, int u);

} // namespace ipoly::decay

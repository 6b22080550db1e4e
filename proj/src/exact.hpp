#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "graph.hpp"

namespace ipoly::exact {

// Exhaustive subset recursion is limited to desk scale on purpose: single
// subset queries up to 30 vertices, full 2^n sweeps up to 24.
inline constexpr int kSubsetVertexLimit = 30;
inline constexpr int kSweepVertexLimit = 24;

// Memoized evaluator of the alternating-sign polynomials
//   q(S) = sum over independent I within S of (-1)^|I| prod_{v in I} p_v
// for one fixed (graph, activities) pair. Single-writer; use one table per
// thread.
class SubsetTable {
public:
    SubsetTable(const Graph& g, ActivityVector p);

    const Graph& graph() const { return *g_; }
    int n() const { return g_->vertex_count(); }
    uint64_t full_mask() const { return n() == 64 ? ~0ull : (1ull << n()) - 1; }

    Complex breve(uint64_t subset_mask);

    // Occupation ratio p_u * q(S minus closed nbhd of u) / q(S minus u).
    Complex ratio(uint64_t subset_mask, int u);

    // q_S = prod_{i in S} p_i * q(V minus closed nbhd of S) for independent S,
    // and 0 otherwise.
    Complex shearer(uint64_t index_mask);

private:
    const Graph* g_;
    ActivityVector p_;
    std::vector<uint64_t> closed_;
    std::unordered_map<uint64_t, Complex> memo_;
};

Complex breve_q_exact(const Graph& g, const ActivityVector& p, const VertexSubset& s);
Complex q_S_exact(const Graph& g, const ActivityVector& p, const VertexSubset& s);
Complex occupation_ratio_exact(const Graph& g, const ActivityVector& p, const VertexSubset& s, int u);

// True iff q(S) > 0 for every subset S, checked by a dense sweep over all
// 2^n masks. Requires p_abs elementwise in [0,1).
bool membership_exact(const Graph& g, const std::vector<double>& p_abs);

// Coefficients (ascending degree) of t -> q over `domain` at activities t*p.
std::vector<double> ray_polynomial(const Graph& g, const std::vector<double>& p_abs,
                                   uint64_t domain_mask);
std::vector<double> ray_polynomial(const Graph& g, const std::vector<double>& p_abs);

double eval_polynomial_at(const std::vector<double>& coeffs, double t);

// Smallest t in (0, t_max] with q_V(t*p) = 0, refined to absolute accuracy
// tol (and typically much finer). Roots are isolated through the derivative
// chain of the ray polynomial, so tangential roots register as long as the
// polynomial value at the stationary point is zero to roundoff.
std::optional<double> first_root_on_ray(const Graph& g, const std::vector<double>& p_abs,
                                        double t_max, double tol);

} // namespace ipoly::exact

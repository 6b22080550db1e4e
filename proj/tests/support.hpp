#pragma once

// Shared fixtures for the unit and acceptance suites: seeded random graphs,
// activity vectors below the degree threshold, and small named graphs.

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "decay_lab.hpp"
#include "exact.hpp"
#include "graph.hpp"

namespace testsupport {

using ipoly::ActivityVector;
using ipoly::Complex;
using ipoly::Graph;

inline Graph k1() { return Graph::build(1, std::vector<std::pair<int, int>>{}); }
inline Graph k2() { return Graph::build(2, std::vector<std::pair<int, int>>{{0, 1}}); }
inline Graph k3() { return Graph::build(3, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}}); }
inline Graph path3() { return Graph::build(3, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}); }
inline Graph cycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph::build(n, edges);
}

inline Graph grid(int rows, int cols) {
    std::vector<std::pair<int, int>> edges;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph::build(rows * cols, edges);
}

// Random graph with n in [n_min, n_max] and maximum degree at most d_max.
inline Graph random_graph(std::mt19937& rng, int n_min, int n_max, int d_max) {
    std::uniform_int_distribution<int> nd(n_min, n_max);
    const int n = nd(rng);
    std::vector<int> degree(static_cast<size_t>(n), 0);
    std::vector<std::pair<int, int>> edges;
    std::uniform_int_distribution<int> vd(0, n - 1);
    const int target = n <= 1 ? 0 : n + static_cast<int>(rng() % static_cast<unsigned>(n));
    for (int attempt = 0; attempt < 50 * target && static_cast<int>(edges.size()) < target; ++attempt) {
        const int u = vd(rng), v = vd(rng);
        if (u == v) continue;
        if (degree[static_cast<size_t>(u)] >= d_max || degree[static_cast<size_t>(v)] >= d_max) continue;
        bool dup = false;
        for (const auto& e : edges)
            if ((e.first == u && e.second == v) || (e.first == v && e.second == u)) dup = true;
        if (dup) continue;
        edges.emplace_back(u, v);
        ++degree[static_cast<size_t>(u)];
        ++degree[static_cast<size_t>(v)];
    }
    return Graph::build(n, edges);
}

// Uniform-magnitude activities at half the degree-threshold radius; complex
// phases when `complex_phases` is set.
inline ActivityVector corpus_activities(std::mt19937& rng, const Graph& g, bool complex_phases) {
    const int d = std::max(1, g.max_degree());
    const double mag = 0.5 * ipoly::lab::lambda_prime_c(d);
    ActivityVector p(static_cast<size_t>(g.vertex_count()));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.14159265358979323846);
    for (auto& v : p) {
        if (complex_phases) {
            const double t = phase(rng);
            v = Complex(mag * std::cos(t), mag * std::sin(t));
        } else {
            v = Complex(mag, 0.0);
        }
    }
    return p;
}

// Largest alpha from a fixed ladder with (1+alpha)^2 |p| still inside the
// region (verified by the exact sweep).
inline double corpus_alpha_squared(const Graph& g, const std::vector<double>& p_abs) {
    for (double alpha : {0.41, 0.3, 0.2, 0.1, 0.05, 0.02}) {
        std::vector<double> scaled(p_abs.size());
        const double f = (1.0 + alpha) * (1.0 + alpha);
        bool in_cube = true;
        for (size_t i = 0; i < p_abs.size(); ++i) {
            scaled[i] = f * p_abs[i];
            if (scaled[i] >= 1.0) in_cube = false;
        }
        if (in_cube && ipoly::exact::membership_exact(g, scaled)) return alpha;
    }
    return 0.0;
}

} // namespace testsupport

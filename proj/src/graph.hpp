#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ipoly {

using Complex = std::complex<double>;

// Per-vertex activities p (the evaluation convention is q(p) = Z(-p)).
using ActivityVector = std::vector<Complex>;

std::vector<double> magnitudes(const ActivityVector& p);
ActivityVector to_activities(const std::vector<double>& p_abs);
ActivityVector scaled(const std::vector<double>& p_abs, double factor);

// Undirected graph over dense vertex indices 0..n-1 with sorted adjacency
// lists. Immutable after construction; shareable across threads.
class Graph {
public:
    Graph() = default;

    // Builds a graph from an edge list. Duplicate edges collapse; self-loops
    // and out-of-range endpoints are rejected.
    static Graph build(int n, std::span<const std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return edge_count_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;
    bool has_edge(int u, int v) const;

    // Closed-neighborhood bitmask of v; only valid when n <= 64.
    uint64_t closed_neighborhood_mask(int v) const;

private:
    int n_ = 0;
    int edge_count_ = 0;
    std::vector<std::vector<int>> adj_;
};

// Mutable vertex mask with constant-time add/remove, used as shared scratch
// state by the subset recursions (single owner per recursion).
class VertexSubset {
public:
    explicit VertexSubset(int n, bool full = true);

    int universe() const { return n_; }
    int size() const { return count_; }
    bool contains(int v) const {
        return (words_[static_cast<size_t>(v) >> 6] >> (v & 63)) & 1u;
    }
    void add(int v);
    void remove(int v);
    void clear();

    // Bitmask view for n <= 64 (used by the exact oracle and by tests).
    uint64_t mask64() const;

private:
    int n_ = 0;
    int count_ = 0;
    std::vector<uint64_t> words_;
};

// Number of self-avoiding walks with exactly `length` edges starting at v.
uint64_t count_saw(const Graph& g, int v, int length);

} // namespace ipoly

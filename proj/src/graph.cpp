#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace ipoly {

std::vector<double> magnitudes(const ActivityVector& p) {
    std::vector<double> out(p.size());
    for (size_t i = 0; i < p.size(); ++i) out[i] = std::abs(p[i]);
    return out;
}

ActivityVector to_activities(const std::vector<double>& p_abs) {
    ActivityVector out(p_abs.size());
    for (size_t i = 0; i < p_abs.size(); ++i) out[i] = Complex(p_abs[i], 0.0);
    return out;
}

ActivityVector scaled(const std::vector<double>& p_abs, double factor) {
    ActivityVector out(p_abs.size());
    for (size_t i = 0; i < p_abs.size(); ++i) out[i] = Complex(factor * p_abs[i], 0.0);
    return out;
}

Graph Graph::build(int n, std::span<const std::pair<int, int>> edges) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "vertex count must be nonnegative");
    Graph g;
    g.n_ = n;
    g.adj_.assign(static_cast<size_t>(n), {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            fail(ErrorKind::InvalidArgument,
                 "edge endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (u == v)
            fail(ErrorKind::InvalidArgument, "self-loop at vertex " + std::to_string(u));
        g.adj_[static_cast<size_t>(u)].push_back(v);
        g.adj_[static_cast<size_t>(v)].push_back(u);
    }
    int m = 0;
    for (auto& list : g.adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        m += static_cast<int>(list.size());
    }
    g.edge_count_ = m / 2;
    return g;
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
    return d;
}

bool Graph::has_edge(int u, int v) const {
    const auto& list = adj_[static_cast<size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
}

uint64_t Graph::closed_neighborhood_mask(int v) const {
    uint64_t mask = 1ull << v;
    for (int w : adj_[static_cast<size_t>(v)]) mask |= 1ull << w;
    return mask;
}

VertexSubset::VertexSubset(int n, bool full) : n_(n) {
    words_.assign((static_cast<size_t>(n) + 63) / 64, 0);
    if (full) {
        for (int v = 0; v < n; ++v) words_[static_cast<size_t>(v) >> 6] |= 1ull << (v & 63);
        count_ = n;
    }
}

void VertexSubset::add(int v) {
    uint64_t& w = words_[static_cast<size_t>(v) >> 6];
    const uint64_t bit = 1ull << (v & 63);
    if (!(w & bit)) {
        w |= bit;
        ++count_;
    }
}

void VertexSubset::remove(int v) {
    uint64_t& w = words_[static_cast<size_t>(v) >> 6];
    const uint64_t bit = 1ull << (v & 63);
    if (w & bit) {
        w &= ~bit;
        --count_;
    }
}

void VertexSubset::clear() {
    std::fill(words_.begin(), words_.end(), 0);
    count_ = 0;
}

uint64_t VertexSubset::mask64() const {
    if (n_ > 64) fail(ErrorKind::TooLarge, "bitmask view requires at most 64 vertices");
    return words_.empty() ? 0 : words_[0];
}

namespace {

uint64_t count_saw_rec(const Graph& g, int u, int remaining, std::vector<char>& visited) {
    if (remaining == 0) return 1;
    visited[static_cast<size_t>(u)] = 1;
    uint64_t total = 0;
    for (int w : g.neighbors(u))
        if (!visited[static_cast<size_t>(w)]) total += count_saw_rec(g, w, remaining - 1, visited);
    visited[static_cast<size_t>(u)] = 0;
    return total;
}

} // namespace

uint64_t count_saw(const Graph& g, int v, int length) {
    if (v < 0 || v >= g.vertex_count())
        fail(ErrorKind::InvalidArgument, "start vertex out of range");
    if (length < 0) fail(ErrorKind::InvalidArgument, "walk length must be nonnegative");
    std::vector<char> visited(static_cast<size_t>(g.vertex_count()), 0);
    return count_saw_rec(g, v, length, visited);
}

} // namespace ipoly

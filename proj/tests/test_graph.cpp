#include "doctest.h"

#include "decay.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "support.hpp"

#include <random>

using namespace ipoly;
using namespace testsupport;

TEST_CASE("graph construction") {
    const Graph g = k2();
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 1);

    const Graph p = path3();
    CHECK(p.max_degree() == 2);
    CHECK(p.neighbors(1) == std::vector<int>{0, 2});

    // Duplicate edges collapse, isolated vertices are fine.
    const Graph dup = Graph::build(4, std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
    CHECK(dup.edge_count() == 1);
    CHECK(dup.degree(2) == 0);

    CHECK_THROWS_AS(Graph::build(2, std::vector<std::pair<int, int>>{{0, 2}}), Error);
    CHECK_THROWS_AS(Graph::build(2, std::vector<std::pair<int, int>>{{1, 1}}), Error);
}

TEST_CASE("adjacency symmetry on random graphs") {
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        const Graph g = random_graph(rng, 2, 12, 4);
        for (int v = 0; v < g.vertex_count(); ++v)
            for (int w : g.neighbors(v)) CHECK(g.has_edge(w, v));
    }
}

TEST_CASE("self-avoiding walk counts") {
    CHECK(count_saw(path3(), 1, 1) == 2);
    CHECK(count_saw(path3(), 0, 0) == 1);
    CHECK(count_saw(k3(), 0, 2) == 2);
    CHECK(count_saw(k2(), 0, 5) == 0);

    std::mt19937 rng(11);
    for (int t = 0; t < 10; ++t) {
        const Graph g = random_graph(rng, 2, 10, 4);
        const int d = g.max_degree();
        for (int v = 0; v < g.vertex_count(); ++v) {
            CHECK(count_saw(g, v, 1) == static_cast<uint64_t>(g.degree(v)));
            for (int len = 1; len <= 4; ++len) {
                const double bound = d * std::pow(std::max(d - 1, 1), len - 1);
                CHECK(static_cast<double>(count_saw(g, v, len)) <= bound + 0.5);
            }
        }
    }
}

TEST_CASE("vertex subset mask operations") {
    VertexSubset s(70, true);
    CHECK(s.size() == 70);
    s.remove(65);
    s.remove(65);
    CHECK(s.size() == 69);
    CHECK(!s.contains(65));
    s.add(65);
    CHECK(s.size() == 70);
    CHECK_THROWS_AS(s.mask64(), Error);

    VertexSubset t(5, false);
    CHECK(t.size() == 0);
    t.add(3);
    CHECK(t.mask64() == 0b01000);
}

TEST_CASE("computation tree size equals cumulative walk counts on forests") {
    // Each node of the depth-l tree corresponds to a distinct self-avoiding
    // walk; on acyclic graphs the correspondence is onto.
    std::mt19937 rng(13);
    for (int t = 0; t < 8; ++t) {
        const int n = 2 + static_cast<int>(rng() % 9);
        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng() % static_cast<unsigned>(v)), v);
        const Graph g = Graph::build(n, edges);
        const ActivityVector p(static_cast<size_t>(n), Complex(0.05, 0.0));
        for (int ell : {1, 2, 4}) {
            for (int v = 0; v < n; ++v) {
                VertexSubset s(n, true);
                long long budget = 1 << 26, nodes = 0;
                decay::occupation_ratio_truncated(g, p, ell, s, v, budget, nodes);
                uint64_t walks = 0;
                for (int len = 0; len <= ell; ++len) walks += count_saw(g, v, len);
                CHECK(static_cast<uint64_t>(nodes) == walks);
            }
        }
    }
}

TEST_CASE("computation tree size is bounded by walk counts in general") {
    const Graph g = cycle(4);
    const ActivityVector p(4, Complex(0.05, 0.0));
    VertexSubset s(4, true);
    long long budget = 1 << 20, nodes = 0;
    decay::occupation_ratio_truncated(g, p, 3, s, 0, budget, nodes);
    uint64_t walks = 0;
    for (int len = 0; len <= 3; ++len) walks += count_saw(g, 0, len);
    CHECK(static_cast<uint64_t>(nodes) <= walks);
    CHECK(static_cast<uint64_t>(nodes) < walks); // the 4-cycle prunes one branch
}

#include "doctest.h"

#include <cmath>
#include <random>

#include "error.hpp"
#include "exact.hpp"
#include "membership.hpp"
#include "support.hpp"

using namespace ipoly;
using namespace testsupport;

TEST_CASE("slack brackets on tiny graphs") {
    {
        const auto b = member::slack_bounds(k2(), {0.3, 0.3}, 0.0, 0.0, member::EvalMode::Exact);
        CHECK(b.lower == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(b.upper == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    }
    {
        const auto b = member::slack_bounds(k1(), {0.5}, 0.0, 0.0, member::EvalMode::Exact);
        CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-12));
    }
    {
        const auto b =
            member::slack_bounds(k3(), {0.2, 0.2, 0.2}, 0.0, 0.0, member::EvalMode::Exact);
        CHECK(b.lower == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(b.upper == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("slack bracket contains the true slack") {
    std::mt19937 rng(107);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    int covered = 0;
    for (int t = 0; t < 40; ++t) {
        const Graph g = random_graph(rng, 2, 10, 4);
        const int n = g.vertex_count();
        std::vector<double> p(static_cast<size_t>(n));
        for (auto& x : p) x = 0.05 + 0.5 * ud(rng) / n;
        if (!exact::membership_exact(g, p)) continue;
        const auto root = exact::first_root_on_ray(g, p, 50.0, 1e-10);
        REQUIRE(root.has_value());
        const double true_slack = *root - 1.0;
        if (true_slack <= 0.0) continue;
        ++covered;
        const auto exact_bracket = member::slack_bounds(g, p, 0.0, 0.0, member::EvalMode::Exact);
        CHECK(true_slack >= exact_bracket.lower - 1e-8);
        CHECK(true_slack <= exact_bracket.upper + 1e-8);
        // Estimated variant with one-sided corrections stays conservative.
        const auto est_bracket =
            member::slack_bounds(g, p, 0.2, 0.5 * true_slack, member::EvalMode::Decay);
        CHECK(est_bracket.lower <= exact_bracket.lower + 1e-9);
        CHECK(est_bracket.upper >= exact_bracket.upper - 1e-9);
        CHECK(true_slack >= est_bracket.lower - 1e-8);
        CHECK(true_slack <= est_bracket.upper + 1e-8);
    }
    CHECK(covered >= 15);
}

TEST_CASE("membership verdicts on named graphs") {
    const decay::DecayParams params;
    {
        const auto r = member::test_membership(k2(), {0.4, 0.4}, 0.1, member::EvalMode::Exact);
        CHECK(r.verdict == member::Verdict::InRegion);
        CHECK(r.final_scale == 1.0);
        CHECK(!r.gamma_history.empty());
    }
    {
        const auto r = member::test_membership(k2(), {0.6, 0.6}, 0.1, member::EvalMode::Exact);
        CHECK(r.verdict == member::Verdict::ScaledOut);
    }
    {
        const auto r = member::test_membership(k1(), {0.5}, 0.5, member::EvalMode::Exact);
        CHECK(r.verdict == member::Verdict::InRegion);
    }
    // The estimated evaluator reaches the same verdicts on these points.
    {
        const auto r = member::test_membership(k2(), {0.4, 0.4}, 0.5, member::EvalMode::Decay, params);
        CHECK(r.verdict == member::Verdict::InRegion);
    }
    {
        const auto r = member::test_membership(k2(), {0.62, 0.62}, 0.5, member::EvalMode::Decay, params);
        CHECK(r.verdict == member::Verdict::ScaledOut);
    }
}

TEST_CASE("membership never contradicts the sweep and scaling preserves verdicts") {
    std::mt19937 rng(109);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    const double alpha = 0.1;
    int in_count = 0, out_count = 0;
    for (int t = 0; t < 25; ++t) {
        const Graph g = random_graph(rng, 2, 9, 4);
        const int n = g.vertex_count();
        std::vector<double> dir(static_cast<size_t>(n));
        for (auto& x : dir) x = 0.2 + 0.6 * ud(rng);
        const auto root = exact::first_root_on_ray(g, dir, 20.0, 1e-10);
        REQUIRE(root.has_value());
        double peak = 0.0;
        for (double x : dir) peak = std::max(peak, x);
        if (*root * peak > 0.7) continue; // keep the straddle window inside (0,1)
        for (double f : {0.5, 0.9, 0.97, 1.0 / (1.0 + alpha), 1.03, 1.3}) {
            std::vector<double> p(dir);
            for (auto& x : p) x *= f * *root;
            const auto verdict = member::test_membership(g, p, alpha, member::EvalMode::Exact);
            std::vector<double> up(p);
            for (auto& x : up) x *= 1.0 + alpha;
            const bool inside = exact::membership_exact(g, p);
            const bool inside_up = exact::membership_exact(g, up);
            if (verdict.verdict == member::Verdict::InRegion) {
                CHECK(inside);
                ++in_count;
            } else {
                CHECK(!inside_up);
                ++out_count;
            }
            // Down-closure: an in-region verdict survives shrinking.
            if (verdict.verdict == member::Verdict::InRegion) {
                std::vector<double> half(p);
                for (auto& x : half) x *= 0.5;
                CHECK(member::test_membership(g, half, alpha, member::EvalMode::Exact).verdict ==
                      member::Verdict::InRegion);
            }
        }
    }
    CHECK(in_count > 10);
    CHECK(out_count > 10);
}

TEST_CASE("estimated-evaluator membership agrees with the sweep on a mini corpus") {
    std::mt19937 rng(127);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    const double alpha = 0.4;
    int checked = 0;
    for (int t = 0; t < 10; ++t) {
        const Graph g = random_graph(rng, 2, 6, 3);
        const int n = g.vertex_count();
        std::vector<double> dir(static_cast<size_t>(n));
        for (auto& x : dir) x = 0.2 + 0.5 * ud(rng);
        const auto root = exact::first_root_on_ray(g, dir, 20.0, 1e-10);
        REQUIRE(root.has_value());
        double peak = 0.0;
        for (double x : dir) peak = std::max(peak, x);
        if (*root * peak > 0.6) continue;
        for (double f : {0.7, 1.2}) {
            std::vector<double> p(dir);
            for (auto& x : p) x *= f * *root;
            const auto verdict = member::test_membership(g, p, alpha, member::EvalMode::Decay);
            std::vector<double> up(p);
            for (auto& x : up) x *= 1.0 + alpha;
            if (verdict.verdict == member::Verdict::InRegion)
                CHECK(exact::membership_exact(g, p));
            else
                CHECK(!exact::membership_exact(g, up));
            ++checked;
        }
    }
    CHECK(checked >= 8);
}

TEST_CASE("membership input validation") {
    CHECK_THROWS_AS(member::test_membership(k1(), {1.0}, 0.1, member::EvalMode::Exact), Error);
    CHECK_THROWS_AS(member::test_membership(k1(), {0.5}, 0.0, member::EvalMode::Exact), Error);
    CHECK_THROWS_AS(member::test_membership(k1(), {-0.5}, 0.1, member::EvalMode::Exact), Error);
}

TEST_CASE("slack bracket fails loudly outside the region") {
    try {
        member::slack_bounds(k2(), {0.7, 0.7}, 0.0, 0.0, member::EvalMode::Exact);
        FAIL("expected a slack violation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SlackViolation);
    }
}

TEST_CASE("threshold brackets for named graphs") {
    {
        const auto b = member::estimate_lambda_G(k2(), 0.05, member::EvalMode::Exact);
        CHECK(b.lo < 0.5);
        CHECK(b.hi >= 0.5);
        CHECK(b.hi / b.lo <= 1.05 * 1.05 + 1e-9);
    }
    {
        const auto b = member::estimate_lambda_G(k3(), 0.05, member::EvalMode::Exact);
        CHECK(b.lo < 1.0 / 3.0);
        CHECK(b.hi >= 1.0 / 3.0);
        CHECK(b.hi / b.lo <= 1.05 * 1.05 + 1e-9);
    }
    {
        // Tiny instance driven entirely through the estimated evaluator.
        const auto b = member::estimate_lambda_G(k2(), 0.4, member::EvalMode::Decay);
        CHECK(b.lo < 0.5);
        CHECK(b.hi >= 0.5);
        CHECK(b.hi / b.lo <= 1.4 * 1.4 + 1e-9);
    }
}

TEST_CASE("threshold lower end respects the degree bound") {
    std::mt19937 rng(113);
    for (int t = 0; t < 6; ++t) {
        const Graph g = random_graph(rng, 3, 9, 4);
        if (g.max_degree() < 1) continue;
        const auto b = member::estimate_lambda_G(g, 0.1, member::EvalMode::Exact);
        const double floor = lab::lambda_prime_c(std::max(1, g.max_degree()));
        CHECK(b.lo >= floor * (1.0 - 1e-9) - 1e-12);
        const auto root = exact::first_root_on_ray(
            g, std::vector<double>(static_cast<size_t>(g.vertex_count()), 1.0), 1.5, 1e-10);
        REQUIRE(root.has_value());
        CHECK(b.lo < *root);
        CHECK(b.hi >= *root * (1.0 - 1e-9));
    }
}

#include "membership.hpp"

#include <cmath>
#include <string>

#include "decay_lab.hpp"
#include "error.hpp"
#include "exact.hpp"

namespace ipoly::member {

namespace {

void validate_p(const Graph& g, const std::vector<double>& p_abs, bool open_interval) {
    if (p_abs.size() != static_cast<size_t>(g.vertex_count()))
        fail(ErrorKind::InvalidArgument, "activity vector length does not match vertex count");
    for (double x : p_abs) {
        if (!(x > 0.0)) fail(ErrorKind::InvalidArgument, "activities must be positive");
        if (open_interval && !(x < 1.0))
            fail(ErrorKind::InvalidArgument, "activities must be strictly below 1");
    }
}

// One-sided overestimate of q over `domain` at scale * p_abs, within a factor
// of (1+eps)/(1-eps) above the true value.
double breve_overestimate(const Graph& g, const std::vector<double>& p_abs, double scale,
                          const VertexSubset& domain, double eps, double eval_alpha,
                          const decay::DecayParams& params) {
    const ActivityVector p = scaled(p_abs, scale);
    const int m = domain.size();
    if (m == 0) return 1.0;
    const int ell = decay::depth_for(m, g.max_degree(), eval_alpha, eps);
    const Complex q = decay::eval_breve_subset(g, p, domain, ell, params.node_budget);
    return q.real() / (1.0 - eps);
}

struct GammaEstimator {
    const Graph& g;
    const std::vector<double>& p_abs;
    EvalMode mode;
    double eps;        // evaluator accuracy per call (decay mode)
    double eval_alpha; // slack passed to the evaluator (decay mode)
    const decay::DecayParams& params;

    // Exact mode reuses the coefficient vectors of t -> q(t * p) so that the
    // whole scaling schedule costs one subset recursion.
    std::vector<double> poly_full;
    std::vector<std::vector<double>> poly_without;

    GammaEstimator(const Graph& graph, const std::vector<double>& p, EvalMode m, double eps_rel,
                   double alpha_eval, const decay::DecayParams& opts)
        : g(graph), p_abs(p), mode(m), eps(eps_rel), eval_alpha(alpha_eval), params(opts) {
        if (mode == EvalMode::Exact) {
            const int n = g.vertex_count();
            const uint64_t full = n == 64 ? ~0ull : (1ull << n) - 1;
            poly_full = exact::ray_polynomial(g, p_abs, full);
            poly_without.resize(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                poly_without[static_cast<size_t>(i)] =
                    exact::ray_polynomial(g, p_abs, full & ~g.closed_neighborhood_mask(i));
        }
    }

    // Estimate of q_empty / sum_i q_{i} at activities scale * p_abs, within
    // [2/3, 3/2] of the true value (exact in Exact mode).
    double gamma(double scale) const {
        const int n = g.vertex_count();
        double q0 = 0.0;
        double sum = 0.0;
        if (mode == EvalMode::Exact) {
            q0 = exact::eval_polynomial_at(poly_full, scale);
            for (int i = 0; i < n; ++i)
                sum += scale * p_abs[static_cast<size_t>(i)] *
                       exact::eval_polynomial_at(poly_without[static_cast<size_t>(i)], scale);
        } else {
            VertexSubset full(n, true);
            q0 = breve_overestimate(g, p_abs, scale, full, eps, eval_alpha, params);
            for (int i = 0; i < n; ++i) {
                VertexSubset domain(n, true);
                domain.remove(i);
                for (int w : g.neighbors(i)) domain.remove(w);
                const double qi = breve_overestimate(g, p_abs, scale, domain, eps, eval_alpha, params);
                sum += scale * p_abs[static_cast<size_t>(i)] * qi;
            }
        }
        if (!(q0 > 0.0) || !(sum > 0.0))
            fail(ErrorKind::Internal, "nonpositive polynomial estimate inside certified region");
        return q0 / sum;
    }
};

} // namespace

SlackBracket slack_bounds(const Graph& g, const std::vector<double>& p_abs, double eps_rel,
                          double working_alpha, EvalMode mode, const decay::DecayParams& params) {
    validate_p(g, p_abs, false);
    if (eps_rel < 0.0 || eps_rel >= 1.0)
        fail(ErrorKind::InvalidArgument, "relative accuracy must lie in [0,1)");
    const int n = g.vertex_count();
    if (n == 0) fail(ErrorKind::InvalidArgument, "graph must have at least one vertex");
    double eval_alpha = 0.0;
    if (mode == EvalMode::Decay) {
        if (!(eps_rel > 0.0)) fail(ErrorKind::InvalidArgument, "decay mode needs eps_rel > 0");
        if (!(working_alpha > 0.0))
            fail(ErrorKind::InvalidArgument, "decay mode needs a positive working slack");
        eval_alpha = std::sqrt(1.0 + working_alpha) - 1.0;
    }
    try {
        GammaEstimator est(g, p_abs, mode, eps_rel, eval_alpha, params);
        const double gamma_hat = est.gamma(1.0);
        const double f = mode == EvalMode::Exact ? 1.0 : (1.0 + eps_rel) / (1.0 - eps_rel);
        return SlackBracket{gamma_hat / f, n * gamma_hat * f};
    } catch (const Error& e) {
        // A failed or nonpositive evaluation here means the point lacks the
        // working slack the caller promised.
        if (e.kind() == ErrorKind::Budget || e.kind() == ErrorKind::Singular ||
            e.kind() == ErrorKind::Internal)
            fail(ErrorKind::SlackViolation, std::string("insufficient working slack: ") + e.what());
        throw;
    }
}

MembershipResult test_membership(const Graph& g, const std::vector<double>& p_abs, double alpha,
                                 EvalMode mode, const decay::DecayParams& params) {
    validate_p(g, p_abs, true);
    if (!(alpha > 0.0) || alpha > 1.0) fail(ErrorKind::InvalidArgument, "alpha must lie in (0,1]");
    const int n = g.vertex_count();
    if (n == 0) fail(ErrorKind::InvalidArgument, "graph must have at least one vertex");

    const double step = alpha / (6.0 * n);
    // The scale grows geometrically from 1/(2n) to 1, so the loop length is
    // fixed by the schedule itself; the cap only guards the invariant.
    const long long cap =
        static_cast<long long>(std::ceil(std::log(2.0 * n) / std::log1p(step))) + 2;

    const double eval_eps = 0.2; // one-sided factor (1+eps)/(1-eps) = 3/2
    const double eval_alpha = std::sqrt(1.0 + alpha / (8.0 * n)) - 1.0;
    GammaEstimator est(g, p_abs, mode, eval_eps, eval_alpha, params);

    MembershipResult result;
    double scale = 1.0 / (2.0 * n);
    while (true) {
        ++result.iterations;
        if (result.iterations > cap)
            fail(ErrorKind::Internal, "membership iteration cap exceeded");
        const double gamma_hat = est.gamma(scale);
        result.gamma_history.push_back(gamma_hat);
        if (gamma_hat <= alpha / (2.0 * n)) {
            result.verdict = Verdict::ScaledOut;
            result.final_scale = scale;
            return result;
        }
        const double next = scale * (1.0 + step);
        if (next >= 1.0) {
            result.verdict = Verdict::InRegion;
            result.final_scale = 1.0;
            return result;
        }
        scale = next;
    }
}

ThresholdBracket estimate_lambda_G(const Graph& g, double alpha, EvalMode mode,
                                   const decay::DecayParams& params) {
    if (!(alpha > 0.0) || alpha > 1.0) fail(ErrorKind::InvalidArgument, "alpha must lie in (0,1]");
    const int n = g.vertex_count();
    if (n == 0) fail(ErrorKind::InvalidArgument, "graph must have at least one vertex");
    const double alpha_call = alpha / 3.0;
    const int d = std::max(1, g.max_degree());
    // Uniform activities strictly below the degree-d tree radius are inside
    // the region for every finite graph, so both seeds are certified.
    double lo = std::max(1.0 / (2.0 * n), (1.0 - 1e-9) * lab::lambda_prime_c(d));
    double hi = 1.0;
    const double target = (1.0 + alpha) * (1.0 + alpha);
    ThresholdBracket out;
    while ((1.0 + alpha_call) * hi / lo > target) {
        const double mid = std::sqrt(lo * hi);
        const std::vector<double> point(static_cast<size_t>(n), mid);
        const MembershipResult verdict = test_membership(g, point, alpha_call, mode, params);
        ++out.membership_calls;
        if (verdict.verdict == Verdict::InRegion)
            lo = mid;
        else
            hi = mid;
    }
    out.lo = lo;
    out.hi = (1.0 + alpha_call) * hi;
    return out;
}

} // namespace ipoly::member

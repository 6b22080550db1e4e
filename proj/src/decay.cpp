#include "decay.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "error.hpp"

namespace ipoly::decay {

namespace {

constexpr double kNearSingular = 1e-12;

void validate_alpha_eps(double alpha, double eps) {
    if (!(alpha > 0.0) || alpha > 1.0) fail(ErrorKind::InvalidArgument, "alpha must lie in (0,1]");
    if (!(eps > 0.0) || eps > 1.0) fail(ErrorKind::InvalidArgument, "eps must lie in (0,1]");
}

int worker_count(int requested, int jobs) {
    int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (t < 1) t = 1;
    return std::min(t, std::max(jobs, 1));
}

} // namespace

int depth_for(int n, int d, double alpha, double eps) {
    validate_alpha_eps(alpha, eps);
    if (n < 1) fail(ErrorKind::InvalidArgument, "vertex count must be positive");
    if (d < 0) fail(ErrorKind::InvalidArgument, "degree must be nonnegative");
    const double arg = 2.0 * (1.0 + alpha) * (1.0 + d / alpha) * n / (eps * alpha);
    return static_cast<int>(std::ceil(2.0 * std::log(arg) / std::log1p(std::sqrt(alpha))));
}

int depth_for_connective(int n, double a, double alpha, double eps) {
    validate_alpha_eps(alpha, eps);
    if (n < 1) fail(ErrorKind::InvalidArgument, "vertex count must be positive");
    if (!(a > 0.0)) fail(ErrorKind::InvalidArgument, "log-depth factor must be positive");
    const double floor_term = a * std::log(static_cast<double>(n));
    const double decay_term = 4.0 / std::sqrt(alpha) * std::log(n / (eps * alpha));
    return static_cast<int>(std::max(std::ceil(floor_term), std::ceil(decay_term)));
}

double error_bound_root(int root_degree, double alpha, int ell) {
    if (!(alpha > 0.0)) fail(ErrorKind::InvalidArgument, "alpha must be positive");
    if (root_degree < 0 || ell < 0) fail(ErrorKind::InvalidArgument, "degree and depth must be nonnegative");
    return (1.0 + root_degree / alpha) / std::pow(1.0 + std::sqrt(alpha), 0.5 * ell);
}

namespace {

// Undo log for the shared subset mask: vertices removed by a node are pushed
// here and re-added when the node unwinds.
using UndoStack = std::vector<int>;

Complex ratio_rec(const Graph& g, const ActivityVector& p, int ell, VertexSubset& s, int u,
                  long long& budget, long long& nodes, int depth, UndoStack& undo,
                  const NodeObserver& observer) {
    if (budget <= 0) fail(ErrorKind::Budget, "node budget exceeded");
    --budget;
    ++nodes;
    const uint64_t entry_mask = observer && s.universe() <= 64 ? s.mask64() : 0;
    if (ell == 0) {
        if (observer) observer(entry_mask, u, depth, Complex(0.0, 0.0));
        return Complex(0.0, 0.0);
    }
    const size_t undo_base = undo.size();
    s.remove(u);
    Complex r = p[static_cast<size_t>(u)];
    for (int w : g.neighbors(u)) {
        if (!s.contains(w)) continue;
        const Complex rc = ratio_rec(g, p, ell - 1, s, w, budget, nodes, depth + 1, undo, observer);
        const Complex den = Complex(1.0, 0.0) - rc;
        if (std::abs(den) < kNearSingular) fail(ErrorKind::Singular, "near-singular denominator");
        r /= den;
        s.remove(w);
        undo.push_back(w);
    }
    while (undo.size() > undo_base) {
        s.add(undo.back());
        undo.pop_back();
    }
    s.add(u);
    if (observer) observer(entry_mask, u, depth, r);
    return r;
}

} // namespace

Complex occupation_ratio_truncated(const Graph& g, const ActivityVector& p, int ell,
                                   VertexSubset& subset, int u, long long& budget,
                                   long long& nodes, const NodeObserver& observer) {
    if (u < 0 || u >= g.vertex_count() || !subset.contains(u))
        fail(ErrorKind::InvalidArgument, "root vertex must belong to the subset");
    if (ell < 0) fail(ErrorKind::InvalidArgument, "depth must be nonnegative");
    UndoStack undo;
    return ratio_rec(g, p, ell, subset, u, budget, nodes, 0, undo, observer);
}

Complex eval_breve_subset(const Graph& g, const ActivityVector& p, const VertexSubset& domain,
                          int ell, long long node_budget, long long* nodes_out) {
    VertexSubset scratch(g.vertex_count(), false);
    std::vector<int> members;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (domain.contains(v)) {
            members.push_back(v);
            scratch.add(v);
        }
    Complex product(1.0, 0.0);
    long long nodes_total = 0;
    for (int v : members) {
        long long budget = node_budget;
        long long nodes = 0;
        const Complex r = occupation_ratio_truncated(g, p, ell, scratch, v, budget, nodes);
        nodes_total += nodes;
        product *= Complex(1.0, 0.0) - r;
        scratch.remove(v);
    }
    if (nodes_out) *nodes_out = nodes_total;
    return product;
}

EvalReport eval_polynomial(const Graph& g, const ActivityVector& p, const DecayParams& params,
                           const NodeObserver& observer) {
    const int n = g.vertex_count();
    if (p.size() != static_cast<size_t>(n))
        fail(ErrorKind::InvalidArgument, "activity vector length does not match vertex count");
    int ell = params.depth;
    if (ell < 0) {
        if (params.policy == DepthPolicy::ConnectiveConstant)
            ell = depth_for_connective(std::max(n, 1), params.conn_a, params.alpha, params.eps);
        else
            ell = depth_for(std::max(n, 1), g.max_degree(), params.alpha, params.eps);
    }
    if (params.node_budget <= 0) fail(ErrorKind::InvalidArgument, "node budget must be positive");

    std::vector<int> order(static_cast<size_t>(n));
    if (params.order.empty()) {
        std::iota(order.begin(), order.end(), 0);
    } else {
        if (params.order.size() != static_cast<size_t>(n))
            fail(ErrorKind::InvalidArgument, "elimination order length does not match vertex count");
        std::vector<char> seen(static_cast<size_t>(n), 0);
        for (int v : params.order) {
            if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
                fail(ErrorKind::InvalidArgument, "elimination order is not a permutation");
            seen[static_cast<size_t>(v)] = 1;
        }
        order = params.order;
    }

    EvalReport report;
    report.depth_used = ell;
    report.step_ratios.assign(static_cast<size_t>(n), Complex(0.0, 0.0));
    std::vector<long long> nodes_per_root(static_cast<size_t>(n), 0);
    std::vector<int> failed_kind(static_cast<size_t>(n), -1);
    std::vector<std::string> failed_msg(static_cast<size_t>(n));

    auto run_root = [&](int i) {
        VertexSubset suffix(n, false);
        for (size_t j = static_cast<size_t>(i); j < order.size(); ++j) suffix.add(order[j]);
        long long budget = params.node_budget;
        long long nodes = 0;
        try {
            report.step_ratios[static_cast<size_t>(i)] = occupation_ratio_truncated(
                g, p, ell, suffix, order[static_cast<size_t>(i)], budget, nodes, observer);
        } catch (const Error& e) {
            failed_kind[static_cast<size_t>(i)] = static_cast<int>(e.kind());
            failed_msg[static_cast<size_t>(i)] = e.what();
        }
        nodes_per_root[static_cast<size_t>(i)] = nodes;
    };

    const int threads = observer ? 1 : worker_count(params.threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) run_root(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) run_root(i);
            });
        for (auto& th : pool) th.join();
    }

    for (int i = 0; i < n; ++i)
        if (failed_kind[static_cast<size_t>(i)] >= 0)
            fail(static_cast<ErrorKind>(failed_kind[static_cast<size_t>(i)]),
                 failed_msg[static_cast<size_t>(i)]);

    report.step_factors.resize(static_cast<size_t>(n));
    Complex product(1.0, 0.0);
    long long nodes_total = 0;
    for (int i = 0; i < n; ++i) {
        report.step_factors[static_cast<size_t>(i)] =
            Complex(1.0, 0.0) - report.step_ratios[static_cast<size_t>(i)];
        product *= report.step_factors[static_cast<size_t>(i)];
        nodes_total += nodes_per_root[static_cast<size_t>(i)];
    }
    report.value = product;
    report.nodes_expanded = nodes_total;
    if (params.alpha > 0.0)
        report.apriori_root_bound = error_bound_root(g.max_degree(), params.alpha, ell);
    return report;
}

EvalReport fptas_eval(const Graph& g, const ActivityVector& p, double alpha, double eps,
                      DecayParams params) {
    validate_alpha_eps(alpha, eps);
    params.alpha = alpha;
    params.eps = eps;
    params.depth = -1;
    return eval_polynomial(g, p, params);
}

namespace {

struct SensAccum {
    double rho = 0.0, beta = 0.0, rho_prime = 0.0, beta_prime = 0.0;
};

SensAccum sensitivity_rec(const Graph& g, const std::vector<double>& base,
                          const std::vector<double>& scaled_up, double alpha, int ell,
                          VertexSubset& s, int u, int depth, UndoStack& undo,
                          SensitivityReport& report) {
    ++report.nodes_visited;
    NodeSensitivity rec;
    rec.vertex = u;
    rec.depth = depth;
    rec.degree = g.degree(u);
    if (ell == 0) {
        rec.truncated = true;
        report.nodes.push_back(rec);
        return {};
    }
    const size_t undo_base = undo.size();
    s.remove(u);
    SensAccum out{base[static_cast<size_t>(u)], 0.0, scaled_up[static_cast<size_t>(u)], 0.0};
    double beta_sum = 0.0, beta_sum_prime = 0.0;
    for (int w : g.neighbors(u)) {
        if (!s.contains(w)) continue;
        const SensAccum c =
            sensitivity_rec(g, base, scaled_up, alpha, ell - 1, s, w, depth + 1, undo, report);
        const double den = 1.0 - c.rho;
        const double den_prime = 1.0 - c.rho_prime;
        if (den < kNearSingular || den_prime < kNearSingular)
            fail(ErrorKind::Singular, "near-singular denominator");
        out.rho /= den;
        out.rho_prime /= den_prime;
        beta_sum += c.beta / den;
        beta_sum_prime += c.beta_prime / den_prime;
        s.remove(w);
        undo.push_back(w);
    }
    while (undo.size() > undo_base) {
        s.add(undo.back());
        undo.pop_back();
    }
    s.add(u);
    out.beta = out.rho * (1.0 + beta_sum);
    out.beta_prime = out.rho_prime * (1.0 + beta_sum_prime);
    // Under the asserted slack, beta stays strictly below (1 - rho) / alpha at
    // every node; a breach means (1+alpha)|p| is not in the region.
    if (out.beta * alpha > (1.0 - out.rho) * (1.0 + 1e-9))
        fail(ErrorKind::SlackViolation,
             "sensitivity bound violated: the slack assertion must be false");
    rec.rho = out.rho;
    rec.beta = out.beta;
    rec.rho_prime = out.rho_prime;
    rec.beta_prime = out.beta_prime;
    report.nodes.push_back(rec);
    return out;
}

} // namespace

SensitivityReport sensitivity_profile(const Graph& g, const ActivityVector& p, double alpha,
                                      int root, int ell) {
    if (!(alpha > 0.0) || alpha > 1.0) fail(ErrorKind::InvalidArgument, "alpha must lie in (0,1]");
    if (root < 0 || root >= g.vertex_count()) fail(ErrorKind::InvalidArgument, "root vertex out of range");
    if (ell < 0) fail(ErrorKind::InvalidArgument, "depth must be nonnegative");
    const std::vector<double> base = magnitudes(p);
    std::vector<double> up(base.size());
    for (size_t i = 0; i < base.size(); ++i) up[i] = (1.0 + alpha) * base[i];
    SensitivityReport report;
    VertexSubset s(g.vertex_count(), true);
    UndoStack undo;
    const SensAccum r = sensitivity_rec(g, base, up, alpha, ell, s, root, 0, undo, report);
    report.root.vertex = root;
    report.root.degree = g.degree(root);
    report.root.rho = r.rho;
    report.root.beta = r.beta;
    report.root.rho_prime = r.rho_prime;
    report.root.beta_prime = r.beta_prime;
    bool first = true;
    for (const auto& node : report.nodes) {
        if (node.truncated) continue;
        if (first) {
            report.rho_min = report.rho_max = node.rho;
            report.beta_min = report.beta_max = node.beta;
            first = false;
        } else {
            report.rho_min = std::min(report.rho_min, node.rho);
            report.rho_max = std::max(report.rho_max, node.rho);
            report.beta_min = std::min(report.beta_min, node.beta);
            report.beta_max = std::max(report.beta_max, node.beta);
        }
    }
    return report;
}

namespace {

std::pair<double, double> exact_sens_rec(const Graph& g, const std::vector<double>& p, VertexSubset& s,
                                         int u, UndoStack& undo) {
    const size_t undo_base = undo.size();
    s.remove(u);
    double rho = p[static_cast<size_t>(u)];
    double beta_sum = 0.0;
    for (int w : g.neighbors(u)) {
        if (!s.contains(w)) continue;
        const auto [crho, cbeta] = exact_sens_rec(g, p, s, w, undo);
        const double den = 1.0 - crho;
        if (den < kNearSingular) fail(ErrorKind::Singular, "near-singular denominator");
        rho /= den;
        beta_sum += cbeta / den;
        s.remove(w);
        undo.push_back(w);
    }
    while (undo.size() > undo_base) {
        s.add(undo.back());
        undo.pop_back();
    }
    s.add(u);
    return {rho, rho * (1.0 + beta_sum)};
}

} // namespace

std::pair<double, double> exact_node_sensitivity(const Graph& g, const std::vector<double>& p_abs,
                                                 VertexSubset& subset, int u) {
    if (!subset.contains(u)) fail(ErrorKind::InvalidArgument, "vertex must belong to the subset");
    UndoStack undo;
    return exact_sens_rec(g, p_abs, subset, u, undo);
}

} // namespace ipoly::decay

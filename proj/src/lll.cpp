#include "lll.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "exact.hpp"

namespace ipoly::lll {

namespace {

void validate_marginals(const std::vector<double>& z) {
    for (double v : z)
        if (!(v >= 0.0) || !(v <= 1.0))
            fail(ErrorKind::InvalidArgument, "marginals must lie in [0,1]");
}

void validate_event(const Event& ev, int m) {
    if (ev.scope.size() > static_cast<size_t>(kScopeLimit))
        fail(ErrorKind::TooLarge, "event scope exceeds the truth-table limit");
    if (ev.table.size() != (size_t{1} << ev.scope.size()))
        fail(ErrorKind::InvalidArgument, "event table size must be 2^|scope|");
    int prev = -1;
    for (int v : ev.scope) {
        if (v < 0 || v >= m) fail(ErrorKind::InvalidArgument, "scope variable out of range");
        if (v <= prev) fail(ErrorKind::InvalidArgument, "scope must be sorted and duplicate-free");
        prev = v;
    }
}

// Exact value of q over the dependency graph at probabilities p.
double breve_at(const Graph& dep, const std::vector<double>& p) {
    exact::SubsetTable table(dep, to_activities(p));
    return table.breve(table.full_mask()).real();
}

} // namespace

Event clause_event(std::span<const int> literals, int variable_count) {
    if (literals.empty()) fail(ErrorKind::Parse, "empty clause");
    std::vector<std::pair<int, bool>> vars; // (variable, satisfied-by-true)
    for (int lit : literals) {
        if (lit == 0) fail(ErrorKind::Parse, "literal 0 inside a clause");
        const int v = std::abs(lit) - 1;
        if (v >= variable_count) fail(ErrorKind::Parse, "literal variable out of range");
        vars.emplace_back(v, lit > 0);
    }
    std::sort(vars.begin(), vars.end());
    // A duplicated variable with both polarities makes the clause a tautology
    // with the same scope; duplicates with equal polarity collapse.
    std::vector<int> scope;
    std::vector<std::vector<bool>> satisfying; // per scope slot, values satisfying the clause
    for (size_t i = 0; i < vars.size();) {
        size_t j = i;
        bool pos = false, neg = false;
        while (j < vars.size() && vars[j].first == vars[i].first) {
            (vars[j].second ? pos : neg) = true;
            ++j;
        }
        scope.push_back(vars[i].first);
        satisfying.push_back({pos, neg}); // {true satisfies, false satisfies}
        i = j;
    }
    Event ev;
    ev.scope = scope;
    ev.table.assign(size_t{1} << scope.size(), 0);
    for (size_t key = 0; key < ev.table.size(); ++key) {
        bool clause_satisfied = false;
        for (size_t j = 0; j < scope.size() && !clause_satisfied; ++j) {
            const bool value = (key >> j) & 1;
            clause_satisfied = value ? satisfying[j][0] : satisfying[j][1];
        }
        ev.table[key] = clause_satisfied ? 0 : 1;
    }
    return ev;
}

Graph build_dependency_graph(const std::vector<Event>& events) {
    const int n = static_cast<int>(events.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto& a = events[static_cast<size_t>(i)].scope;
            const auto& b = events[static_cast<size_t>(j)].scope;
            size_t x = 0, y = 0;
            bool meet = false;
            while (x < a.size() && y < b.size()) {
                if (a[x] == b[y]) {
                    meet = true;
                    break;
                }
                (a[x] < b[y] ? x : y) += 1;
            }
            if (meet) edges.emplace_back(i, j);
        }
    return Graph::build(n, edges);
}

VariableModel make_model(int m, std::vector<double> z, std::vector<Event> events) {
    if (m < 0) fail(ErrorKind::InvalidArgument, "variable count must be nonnegative");
    if (z.size() != static_cast<size_t>(m))
        fail(ErrorKind::InvalidArgument, "marginal vector length must equal the variable count");
    validate_marginals(z);
    for (const Event& ev : events) validate_event(ev, m);
    VariableModel vm;
    vm.m = m;
    vm.z = std::move(z);
    vm.events = std::move(events);
    vm.dependency = build_dependency_graph(vm.events);
    return vm;
}

double event_probability(const Event& ev, const std::vector<double>& z) {
    validate_event(ev, static_cast<int>(z.size()));
    validate_marginals(z);
    double total = 0.0;
    for (size_t key = 0; key < ev.table.size(); ++key) {
        if (!ev.table[key]) continue;
        double w = 1.0;
        for (size_t j = 0; j < ev.scope.size(); ++j) {
            const double zj = z[static_cast<size_t>(ev.scope[j])];
            w *= ((key >> j) & 1) ? zj : 1.0 - zj;
        }
        total += w;
    }
    return total;
}

std::vector<double> event_probabilities(const VariableModel& vm, const std::vector<double>& z) {
    std::vector<double> p(vm.events.size());
    for (size_t i = 0; i < vm.events.size(); ++i) p[i] = event_probability(vm.events[i], z);
    return p;
}

bool verify_assignment(const VariableModel& vm, const std::vector<uint8_t>& omega) {
    if (omega.size() != static_cast<size_t>(vm.m))
        fail(ErrorKind::InvalidArgument, "assignment length must equal the variable count");
    for (const Event& ev : vm.events) {
        size_t key = 0;
        for (size_t j = 0; j < ev.scope.size(); ++j)
            if (omega[static_cast<size_t>(ev.scope[j])]) key |= size_t{1} << j;
        if (ev.table[key]) return false;
    }
    return true;
}

std::vector<uint8_t> round_variables_exact(const VariableModel& vm) {
    const int n = static_cast<int>(vm.events.size());
    if (n > exact::kSweepVertexLimit)
        fail(ErrorKind::TooLarge, "dependency graph too large for the exact rounding mode");
    std::vector<double> z = vm.z;
    std::vector<double> p = event_probabilities(vm, z);
    for (double pj : p)
        if (pj >= 1.0) fail(ErrorKind::Infeasible, "an event has probability 1");
    if (!exact::membership_exact(vm.dependency, p))
        fail(ErrorKind::SlackViolation, "initial probabilities are not in the admissible region");

    for (int i = 0; i < vm.m; ++i) {
        if (z[static_cast<size_t>(i)] == 0.0 || z[static_cast<size_t>(i)] == 1.0) continue;
        std::vector<double> z1 = z, z0 = z;
        z1[static_cast<size_t>(i)] = 1.0;
        z0[static_cast<size_t>(i)] = 0.0;
        // q is multilinear in each marginal, so the partial derivative is the
        // difference of the two endpoint values.
        const double q1 = breve_at(vm.dependency, event_probabilities(vm, z1));
        const double q0 = breve_at(vm.dependency, event_probabilities(vm, z0));
        z = (q1 - q0 >= 0.0) ? z1 : z0;
        if (!exact::membership_exact(vm.dependency, event_probabilities(vm, z)))
            fail(ErrorKind::Internal, "rounding left the admissible region");
    }
    std::vector<uint8_t> omega(static_cast<size_t>(vm.m));
    for (int i = 0; i < vm.m; ++i) omega[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] >= 0.5;
    if (!verify_assignment(vm, omega))
        fail(ErrorKind::Internal, "rounded assignment fails verification");
    return omega;
}

namespace {

// One-sided underestimate of q over the dependency graph at probabilities p:
// within [1-eps, 1] of the true value.
double breve_underestimate(const Graph& dep, const std::vector<double>& p, double eps,
                           double working_slack, member::EvalMode mode,
                           const decay::DecayParams& params) {
    if (mode == member::EvalMode::Exact) return breve_at(dep, p);
    const double eval_alpha = std::sqrt(1.0 + working_slack) - 1.0;
    const decay::EvalReport rep =
        decay::fptas_eval(dep, to_activities(p), eval_alpha, eps / 2.0, params);
    return rep.value.real() * (1.0 - eps / 2.0);
}

} // namespace

RoundingTrace round_variables(const VariableModel& vm, double alpha, member::EvalMode mode,
                              const decay::DecayParams& params) {
    if (!(alpha > 0.0) || alpha > 1.0) fail(ErrorKind::InvalidArgument, "alpha must lie in (0,1]");
    const int m = vm.m;
    if (m == 0) {
        RoundingTrace trace;
        if (!vm.events.empty()) {
            // No variables: events are constants and must all be impossible.
            for (const Event& ev : vm.events)
                if (!ev.table.empty() && ev.table[0])
                    fail(ErrorKind::Infeasible, "a constant event occurs");
        }
        return trace;
    }

    RoundingTrace trace;
    std::vector<double> z = vm.z;
    // Near-integral marginals are fixed up front; each event probability can
    // grow by at most 1/(1 - alpha/4), which costs half the slack.
    for (int i = 0; i < m; ++i) {
        double& zi = z[static_cast<size_t>(i)];
        if (zi == 0.0 || zi == 1.0) continue;
        if (zi <= alpha / 4.0) {
            zi = 0.0;
            trace.preprocessed.emplace_back(i, 0);
        } else if (zi >= 1.0 - alpha / 4.0) {
            zi = 1.0;
            trace.preprocessed.emplace_back(i, 1);
        }
    }
    std::vector<double> p = event_probabilities(vm, z);
    for (double pj : p)
        if (pj >= 1.0) fail(ErrorKind::Infeasible, "an event has probability 1");
    if (vm.events.size() <= static_cast<size_t>(exact::kSweepVertexLimit)) {
        std::vector<double> scaled_p(p.size());
        for (size_t j = 0; j < p.size(); ++j) scaled_p[j] = (1.0 + alpha / 2.0) * p[j];
        bool ok = true;
        for (double v : scaled_p)
            if (v >= 1.0) ok = false;
        if (!ok || !exact::membership_exact(vm.dependency, scaled_p))
            fail(ErrorKind::SlackViolation,
                 "slack assertion violated: preprocessed point lacks half the stated slack");
    }

    const double delta = alpha * alpha / (36.0 * m);
    const double eval_eps = delta / 4.0;
    const double working_slack = alpha / (8.0 * m);

    for (int i = 0; i < m; ++i) {
        double& zi = z[static_cast<size_t>(i)];
        if (zi == 0.0 || zi == 1.0) continue;
        const int iteration = i + 1;
        const double scale = 1.0 + alpha * (m - iteration) / (2.0 * m);

        std::vector<double> z_minus = z;
        z_minus[static_cast<size_t>(i)] = zi - delta;
        const std::vector<double> p0 = event_probabilities(vm, z);
        const std::vector<double> pd = event_probabilities(vm, z_minus);
        std::vector<double> sp0(p0.size()), spd(pd.size());
        for (size_t j = 0; j < p0.size(); ++j) {
            sp0[j] = scale * p0[j];
            spd[j] = scale * pd[j];
        }
        double q0, qd;
        try {
            q0 = breve_underestimate(vm.dependency, sp0, eval_eps, working_slack, mode, params);
            qd = breve_underestimate(vm.dependency, spd, eval_eps, working_slack, mode, params);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Budget || e.kind() == ErrorKind::Singular)
                fail(ErrorKind::SlackViolation,
                     std::string("slack assertion violated: ") + e.what());
            throw;
        }
        const double derivative = (q0 - qd) / delta;
        const int direction = derivative >= 0.0 ? 1 : 0;
        zi = direction;
        trace.steps.push_back(RoundingStep{i, scale, delta, eval_eps, q0, qd, derivative, direction,
                                           working_slack});
    }

    trace.assignment.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        trace.assignment[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] >= 0.5;
    if (!verify_assignment(vm, trace.assignment))
        fail(ErrorKind::SlackViolation,
             "final assignment violates an event; the slack assertion must be false");
    return trace;
}

} // namespace ipoly::lll

#include "exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "error.hpp"

namespace ipoly::exact {

namespace {

void require_activities(const Graph& g, size_t len) {
    if (len != static_cast<size_t>(g.vertex_count()))
        fail(ErrorKind::InvalidArgument, "activity vector length does not match vertex count");
}

std::vector<uint64_t> closed_masks(const Graph& g) {
    std::vector<uint64_t> closed(static_cast<size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v)
        closed[static_cast<size_t>(v)] = g.closed_neighborhood_mask(v);
    return closed;
}

} // namespace

SubsetTable::SubsetTable(const Graph& g, ActivityVector p) : g_(&g), p_(std::move(p)) {
    if (g.vertex_count() > kSubsetVertexLimit)
        fail(ErrorKind::TooLarge, "graph too large for exact mode (limit " +
                                      std::to_string(kSubsetVertexLimit) + " vertices)");
    require_activities(g, p_.size());
    closed_ = closed_masks(g);
    memo_.emplace(0ull, Complex(1.0, 0.0));
}

Complex SubsetTable::breve(uint64_t mask) {
    if (mask == 0) return Complex(1.0, 0.0);
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    const int u = std::countr_zero(mask);
    // Pivot on the lowest-index vertex of S:
    //   q(S) = q(S \ u) - p_u * q(S \ closed(u)).
    const Complex val =
        breve(mask & (mask - 1)) - p_[static_cast<size_t>(u)] * breve(mask & ~closed_[static_cast<size_t>(u)]);
    memo_.emplace(mask, val);
    return val;
}

Complex SubsetTable::ratio(uint64_t mask, int u) {
    if (u < 0 || u >= n() || !((mask >> u) & 1))
        fail(ErrorKind::InvalidArgument, "ratio vertex must belong to the subset");
    const Complex den = breve(mask & ~(1ull << u));
    if (std::abs(den) == 0.0)
        fail(ErrorKind::Singular, "evaluation point outside admissible region");
    return p_[static_cast<size_t>(u)] * breve(mask & ~closed_[static_cast<size_t>(u)]) / den;
}

Complex SubsetTable::shearer(uint64_t index_mask) {
    uint64_t remaining = index_mask;
    uint64_t excluded = 0;
    Complex prefix(1.0, 0.0);
    while (remaining) {
        const int v = std::countr_zero(remaining);
        remaining &= remaining - 1;
        for (int w : g_->neighbors(v))
            if ((index_mask >> w) & 1) return Complex(0.0, 0.0); // S not independent
        prefix *= p_[static_cast<size_t>(v)];
        excluded |= closed_[static_cast<size_t>(v)];
    }
    return prefix * breve(full_mask() & ~excluded);
}

Complex breve_q_exact(const Graph& g, const ActivityVector& p, const VertexSubset& s) {
    SubsetTable table(g, p);
    return table.breve(s.mask64());
}

Complex q_S_exact(const Graph& g, const ActivityVector& p, const VertexSubset& s) {
    SubsetTable table(g, p);
    return table.shearer(s.mask64());
}

Complex occupation_ratio_exact(const Graph& g, const ActivityVector& p, const VertexSubset& s, int u) {
    SubsetTable table(g, p);
    return table.ratio(s.mask64(), u);
}

bool membership_exact(const Graph& g, const std::vector<double>& p_abs) {
    const int n = g.vertex_count();
    if (n > kSweepVertexLimit)
        fail(ErrorKind::TooLarge, "graph too large for the full membership sweep (limit " +
                                      std::to_string(kSweepVertexLimit) + " vertices)");
    require_activities(g, p_abs.size());
    for (double x : p_abs)
        if (!(x >= 0.0) || x >= 1.0)
            fail(ErrorKind::InvalidArgument, "membership requires magnitudes in [0,1)");
    const std::vector<uint64_t> closed = closed_masks(g);
    const size_t total = size_t{1} << n;
    std::vector<double> q(total);
    q[0] = 1.0;
    for (uint64_t mask = 1; mask < total; ++mask) {
        const int u = std::countr_zero(mask);
        const double val =
            q[mask & (mask - 1)] - p_abs[static_cast<size_t>(u)] * q[mask & ~closed[static_cast<size_t>(u)]];
        if (!(val > 0.0)) return false;
        q[mask] = val;
    }
    return true;
}

namespace {

using Poly = std::vector<double>;

const Poly& ray_poly_rec(uint64_t mask, const std::vector<double>& p,
                         const std::vector<uint64_t>& closed,
                         std::unordered_map<uint64_t, Poly>& memo) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    const int u = std::countr_zero(mask);
    const Poly& a = ray_poly_rec(mask & (mask - 1), p, closed, memo);
    const Poly& b = ray_poly_rec(mask & ~closed[static_cast<size_t>(u)], p, closed, memo);
    Poly res = a;
    if (res.size() < b.size() + 1) res.resize(b.size() + 1, 0.0);
    for (size_t k = 0; k < b.size(); ++k) res[k + 1] -= p[static_cast<size_t>(u)] * b[k];
    return memo.emplace(mask, std::move(res)).first->second;
}

Poly derivative(const Poly& c) {
    if (c.size() <= 1) return {};
    Poly d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
    return d;
}

double bisect_root(const Poly& c, double lo, double hi, double flo) {
    // flo carries the sign at lo; assumes a sign change on [lo, hi].
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * (1.0 + hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval_polynomial_at(c, mid);
        if (fm == 0.0) return mid;
        if ((flo > 0) == (fm > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// All real roots of the polynomial on [lo, hi], found by recursing on the
// derivative to isolate monotone pieces.
std::vector<double> real_roots(const Poly& c, double lo, double hi) {
    size_t deg = c.size();
    while (deg > 1 && c[deg - 1] == 0.0) --deg;
    if (deg <= 1) return {};
    if (deg == 2) {
        const double r = -c[0] / c[1];
        if (r >= lo && r <= hi) return {r};
        return {};
    }
    std::vector<double> breaks = real_roots(derivative(c), lo, hi);
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());

    double scale = 0.0;
    for (size_t k = 0; k < deg; ++k) scale += std::abs(c[k]) * std::pow(std::max(1.0, std::abs(hi)), double(k));
    const double tiny = 1e-13 * std::max(1.0, scale);

    std::vector<double> roots;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        if (!(b > a)) continue;
        const double fa = eval_polynomial_at(c, a);
        const double fb = eval_polynomial_at(c, b);
        if (std::abs(fa) <= tiny) roots.push_back(a);
        if ((fa > 0) != (fb > 0) && std::abs(fa) > tiny && std::abs(fb) > tiny)
            roots.push_back(bisect_root(c, a, b, fa));
    }
    if (!breaks.empty() && std::abs(eval_polynomial_at(c, breaks.back())) <= tiny)
        roots.push_back(breaks.back());
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) { return std::abs(x - y) <= 1e-13 * (1.0 + std::abs(y)); }),
                roots.end());
    return roots;
}

} // namespace

std::vector<double> ray_polynomial(const Graph& g, const std::vector<double>& p_abs, uint64_t domain_mask) {
    if (g.vertex_count() > kSubsetVertexLimit)
        fail(ErrorKind::TooLarge, "graph too large for exact mode (limit " +
                                      std::to_string(kSubsetVertexLimit) + " vertices)");
    require_activities(g, p_abs.size());
    std::unordered_map<uint64_t, Poly> memo;
    memo.emplace(0ull, Poly{1.0});
    return ray_poly_rec(domain_mask, p_abs, closed_masks(g), memo);
}

std::vector<double> ray_polynomial(const Graph& g, const std::vector<double>& p_abs) {
    const int n = g.vertex_count();
    const uint64_t full = n == 64 ? ~0ull : (1ull << n) - 1;
    return ray_polynomial(g, p_abs, full);
}

double eval_polynomial_at(const std::vector<double>& coeffs, double t) {
    double acc = 0.0;
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
    return acc;
}

std::optional<double> first_root_on_ray(const Graph& g, const std::vector<double>& p_abs,
                                        double t_max, double tol) {
    if (!(tol > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (!(t_max > 0.0)) fail(ErrorKind::InvalidArgument, "scan range must be positive");
    const Poly coeffs = ray_polynomial(g, p_abs);
    for (double r : real_roots(coeffs, 0.0, t_max))
        if (r > tol * 1e-6) return r;
    return std::nullopt;
}

} // namespace ipoly::exact

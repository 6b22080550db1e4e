#include "decay_lab.hpp"

#include <cmath>
#include <algorithm>
#include <string>

#include "error.hpp"

namespace ipoly::lab {

namespace {

double pow_int(double base, int exp) {
    double acc = 1.0;
    for (int i = 0; i < exp; ++i) acc *= base;
    return acc;
}

double f_map(int d, double lambda, double x) { return lambda / pow_int(1.0 - x, d); }

double f_prime(int d, double lambda, double x) {
    return d * lambda / pow_int(1.0 - x, d + 1);
}

// Critical activity of the d-ary recurrence, d^d/(d+1)^(d+1).
double tree_critical(int d) { return pow_int(double(d), d) / pow_int(double(d) + 1.0, d + 1); }

double bisect_fixed_point(int d, double lambda, double lo, double hi, double glo) {
    // Root of f(x) - x on [lo, hi]; glo is the sign at lo.
    for (int iter = 0; iter < 200 && hi - lo > 1e-17; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gm = f_map(d, lambda, mid) - mid;
        if (gm == 0.0) return mid;
        if ((gm > 0) == (glo > 0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct RateMeasurement {
    double rho = 0.0;
    long long window_start = 0;
    double window_start_error = 0.0;
};

RateMeasurement measure_rate(int d, double alpha, long long iters) {
    if (!(alpha > 0.0) || alpha >= 1.0)
        fail(ErrorKind::InvalidArgument, "slack must lie in (0,1)");
    if (iters < 10) fail(ErrorKind::InvalidArgument, "iteration budget too small");
    const double lambda = (1.0 - alpha) * tree_critical(d);
    const FixedPoints fp = fixed_points(d, lambda);

    // Tail window: ratios recorded once the error drops below 1e-4, cut off
    // at 1e-10 where cancellation starts to dominate the quotient.
    constexpr double kWindowOpen = 1e-4;
    constexpr double kNoiseFloor = 1e-10;
    std::vector<double> ratios;
    RateMeasurement out;
    double x = 0.0;
    double err = fp.x_star;
    for (long long l = 0; l < iters; ++l) {
        const double x_next = f_map(d, lambda, x);
        const double err_next = fp.x_star - x_next;
        if (err_next < kNoiseFloor) break;
        if (err < kWindowOpen) {
            if (ratios.empty()) {
                out.window_start = l;
                out.window_start_error = err;
            }
            ratios.push_back(err_next / err);
        }
        x = x_next;
        err = err_next;
    }
    if (ratios.empty())
        fail(ErrorKind::InvalidArgument,
             "iteration budget too small to reach the asymptotic window");
    const size_t quarter = std::max<size_t>(1, ratios.size() / 4);
    double acc = 0.0;
    for (size_t i = ratios.size() - quarter; i < ratios.size(); ++i) acc += ratios[i];
    out.rho = acc / double(quarter);
    return out;
}

} // namespace

double lambda_prime_c(int d) {
    if (d < 1) fail(ErrorKind::InvalidArgument, "degree must be at least 1");
    if (d == 1) return 0.5;
    return pow_int(double(d) - 1.0, d - 1) / pow_int(double(d), d);
}

double lambda_c(int d) {
    if (d < 3) fail(ErrorKind::InvalidArgument, "uniqueness threshold requires degree >= 3");
    return pow_int(double(d) - 1.0, d - 1) / pow_int(double(d) - 2.0, d);
}

FixedPoints fixed_points(int d, double lambda) {
    if (d < 1) fail(ErrorKind::InvalidArgument, "degree must be at least 1");
    if (!(lambda > 0.0)) fail(ErrorKind::InvalidArgument, "activity must be positive");
    const double crit = tree_critical(d);
    if (lambda > crit * (1.0 + 1e-12))
        fail(ErrorKind::InvalidArgument, "no fixed point in (0,1): activity above critical");

    // Plain iteration from 0 first (increment tolerance 1e-14), then a
    // bounded bisection around the stationary point of f(x) - x; the latter
    // stays accurate even at criticality, where the root is tangential.
    double x = 0.0;
    for (long long l = 0; l < 2'000'000; ++l) {
        const double nx = f_map(d, lambda, x);
        if (std::abs(nx - x) <= 1e-14) {
            x = nx;
            break;
        }
        x = nx;
    }

    // f'(xm) = 1 at xm = 1 - (d*lambda)^(1/(d+1)), the minimum of f(x) - x.
    const double xm = 1.0 - std::pow(double(d) * lambda, 1.0 / (d + 1));
    const double gm = f_map(d, lambda, xm) - xm;
    if (gm > 1e-12)
        fail(ErrorKind::InvalidArgument, "no fixed point in (0,1): activity above critical");

    // A double holding the critical activity is off the real threshold by up
    // to an ulp, which already moves the tangential root by O(sqrt(eps)).
    // Snap to the stationary point inside that rounding shell so critical
    // inputs report the critical answer.
    const bool effectively_critical = std::abs(lambda - crit) <= 16.0 * 2.220446049250313e-16 * crit;

    FixedPoints fp;
    if (gm >= 0.0 || effectively_critical) {
        fp.x_star = xm;
        fp.x_dagger = xm;
    } else {
        fp.x_star = bisect_fixed_point(d, lambda, 0.0, xm, lambda);
        double hi = 1.0 - 1e-9;
        if (f_map(d, lambda, hi) - hi <= 0.0) hi = 1.0 - 1e-15;
        fp.x_dagger = bisect_fixed_point(d, lambda, xm, hi, gm);
    }
    fp.f_prime_at_star = f_prime(d, lambda, fp.x_star);
    (void)x;
    return fp;
}

double contraction_rate(int d, double alpha, long long iters) {
    return measure_rate(d, alpha, iters).rho;
}

DecayFit scaling_fit(int d, const std::vector<double>& alphas, long long iters) {
    if (alphas.size() < 2)
        fail(ErrorKind::InvalidArgument, "scaling fit needs at least two slack values");
    for (size_t i = 0; i + 1 < alphas.size(); ++i)
        if (!(alphas[i] > alphas[i + 1]))
            fail(ErrorKind::InvalidArgument, "slack grid must be strictly decreasing");

    DecayFit fit;
    fit.alphas = alphas;
    fit.rates.reserve(alphas.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double a : alphas) {
        const RateMeasurement m = measure_rate(d, a, iters);
        fit.rates.push_back(m.rho);
        fit.window_start_max = std::max(fit.window_start_max, m.window_start);
        fit.window_error_max = std::max(fit.window_error_max, m.window_start_error);
        const double lx = std::log(a);
        const double ly = std::log(1.0 - m.rho);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double k = double(alphas.size());
    const double denom = k * sxx - sx * sx;
    if (std::abs(denom) < 1e-30)
        fail(ErrorKind::InvalidArgument, "degenerate slack grid for the fit");
    fit.fitted_exponent = (k * sxy - sx * sy) / denom;
    fit.fitted_coefficient = std::exp((sy - fit.fitted_exponent * sx) / k);
    return fit;
}

} // namespace ipoly::lab

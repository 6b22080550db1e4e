#pragma once

#include <cstdint>
#include <vector>

namespace ipoly::lab {

// Critical activity of the degree-d tree bound: 1/2 for d = 1, otherwise
// (d-1)^(d-1)/d^d.
double lambda_prime_c(int d);

// Positive-activity uniqueness threshold (d-1)^(d-1)/(d-2)^d, defined for
// d >= 3. Reference output only.
double lambda_c(int d);

struct FixedPoints {
    double x_star = 0.0;       // smaller fixed point of x -> lambda/(1-x)^d
    double x_dagger = 0.0;     // larger fixed point (equals x_star at criticality)
    double f_prime_at_star = 0.0;
};

// Fixed points of f(x) = lambda/(1-x)^d in (0,1). Requires
// 0 < lambda <= d^d/(d+1)^(d+1); errors out above that threshold.
FixedPoints fixed_points(int d, double lambda);

// Asymptotic contraction factor of the iteration x <- f(x) started at 0 with
// lambda = (1-alpha) * d^d/(d+1)^(d+1); measured from the tail of the error
// sequence and equal to f'(x_star) in exact arithmetic.
double contraction_rate(int d, double alpha, long long iters);

struct DecayFit {
    std::vector<double> alphas;          // strictly decreasing slack grid
    std::vector<double> rates;           // measured contraction factor per alpha
    double fitted_exponent = 0.0;        // least-squares slope of log(1-rho) vs log(alpha)
    double fitted_coefficient = 0.0;     // exp(intercept) of the same fit
    long long window_start_max = 0;      // latest iteration at which a tail window opened
    double window_error_max = 0.0;       // largest error at a window start
};

// Measures contraction rates over an alpha grid and fits the scaling law of
// 1 - rho against alpha. Requires at least two strictly decreasing alphas.
DecayFit scaling_fit(int d, const std::vector<double>& alphas, long long iters = 200000);

} // namespace ipoly::lab

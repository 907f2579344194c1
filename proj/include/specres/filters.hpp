#pragma once

#include <cstddef>
#include <vector>

namespace specres {

// Decreasing heat-spectrum exponents s_0 > s_1 > ... together with the index
// k of the coefficient a filter is meant to isolate.
struct PoleSet {
    std::vector<double> poles;
    std::size_t k = 0;

    // Validates: nonempty, finite, strictly decreasing with gaps >= 1e-6,
    // k < poles.size(). Throws InvalidArgument otherwise.
    PoleSet(std::vector<double> poles_in, std::size_t k_in);

    double s0() const { return poles.front(); }
    double sk() const { return poles[k]; }
};

// Weighted combination of the basis shapes [t >= a] e^(-t/a), built so that
// its moments int t^(-s_i) f(t) dt vanish for i < k and equal 1 at i = k.
// Immutable after construction; safe to share across threads.
struct Filter {
    PoleSet poles;
    std::vector<double> scales;   // ascending, all >= 1, one per pole index <= k
    std::vector<double> weights;  // one per scale
    double normalization;         // k-th moment of the solution with first weight 1

    // f(t) = sum_j w_j [t >= a_j] e^(-t/a_j); requires t > 0.
    double time_value(double t) const;

    // Laplace transform F(x) = sum_j w_j a_j e^(-1-a_j x)/(1+a_j x) for x >= 0.
    // Terms vanish exactly once the exponent underflows.
    double laplace(double x) const;
};

// Moment of one basis shape: int t^(-s) [t >= a] e^(-t/a) dt = a^(1-s) Gamma(1-s, 1).
// Requires a >= 1.
double basis_moment(double scale, double s);

// Solves the (k+1)x(k+1) moment system for the weights. Default scales are
// 2^j. Scales are sorted ascending; duplicates, values below 1, or a count
// other than k+1 raise InvalidScales. A condition-number estimate above 1e12
// raises IllConditioned instead of returning garbage weights.
Filter build_filter(const PoleSet& poles);
Filter build_filter(const PoleSet& poles, std::vector<double> scales);

// Independent check of the moment conditions: adaptive quadrature of
// int t^(-s) f(t) dt over the filter's support, absolute tolerance 1e-11.
double moment_quadrature(const Filter& filter, double s);

}  // namespace specres

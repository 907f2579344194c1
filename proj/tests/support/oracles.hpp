#pragma once

// Brute-force heat-trace references, independent of the filter machinery.
// The partial trace H(t) = sum_i m_i exp(-lambda_i t) is fit as
// a * t^{-s0} + b at two small times; a and b are the values the estimators
// are expected to recover. Plain long double summation keeps the code path
// distinct from the library's compensated accumulation.

#include <cmath>
#include <vector>

#include "specres/localized.hpp"
#include "specres/models.hpp"

namespace oracles {

inline double heat_trace(const std::vector<specres::SpectrumEntry>& entries, double t) {
    long double acc = 0.0L;
    for (const specres::SpectrumEntry& e : entries) {
        acc += static_cast<long double>(e.multiplicity) *
               std::exp(static_cast<long double>(-e.eigenvalue * t));
    }
    return static_cast<double>(acc);
}

inline double heat_trace(const std::vector<specres::WeightedEntry>& entries, double t) {
    long double acc = 0.0L;
    for (const specres::WeightedEntry& e : entries) {
        acc += static_cast<long double>(e.weight) *
               std::exp(static_cast<long double>(-e.eigenvalue * t));
    }
    return static_cast<double>(acc);
}

struct HeatFit {
    double leading;   // coefficient of t^{-s0}
    double constant;  // additive term
};

inline HeatFit fit_two_point(double s0, double t1, double h1, double t2, double h2) {
    const double p1 = std::pow(t1, -s0);
    const double p2 = std::pow(t2, -s0);
    const double leading = (h1 - h2) / (p1 - p2);
    return HeatFit{leading, h1 - leading * p1};
}

template <typename Entries>
HeatFit fit_heat_trace(const Entries& entries, double s0, double t1, double t2) {
    return fit_two_point(s0, t1, heat_trace(entries, t1), t2, heat_trace(entries, t2));
}

}  // namespace oracles

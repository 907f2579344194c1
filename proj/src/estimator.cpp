#include "specres/estimator.hpp"

#include <cmath>
#include <cstdint>

#include "specres/errors.hpp"
#include "specres/special_functions.hpp"
#include "specres/summation.hpp"

namespace specres {
namespace {

double resolve_m(const PoleSet& poles, std::optional<double> m) {
    const double gap = poles.s0() - poles.sk();
    if (!m.has_value()) {
        return gap + 1.0;
    }
    if (!(*m > gap)) {
        throw ScheduleViolation("schedule parameter m must exceed s_0 - s_k = " +
                                std::to_string(gap));
    }
    return *m;
}

void fill_oracle(EstimateResult& r, const Spectrum& spectrum, const Filter& filter) {
    if (!spectrum.oracle.has_value()) {
        return;
    }
    const OracleData& oracle = *spectrum.oracle;
    const std::size_t k = filter.poles.k;
    if (k >= oracle.coefficients.size() || k >= oracle.poles.size()) {
        return;
    }
    for (std::size_t i = 0; i <= k; ++i) {
        if (std::fabs(filter.poles.poles[i] - oracle.poles[i]) > 1e-12) {
            return;
        }
    }
    r.oracle = oracle.coefficients[k];
    r.abs_error = r.estimate - *r.oracle;
    if (*r.oracle != 0.0) {
        r.rel_error = std::fabs(*r.abs_error) / std::fabs(*r.oracle);
    }
}

}  // namespace

double epsilon_schedule(double cutoff, double m) {
    if (!(cutoff > 1.0)) {
        throw InvalidCutoff("epsilon_schedule: cutoff must exceed 1");
    }
    if (!(m > 0.0)) {
        throw InvalidArgument("epsilon_schedule: m must be positive");
    }
    return m * std::log(cutoff) / cutoff;
}

double estimate_with_epsilon(const Spectrum& spectrum, const Filter& filter,
                             double cutoff, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidArgument("estimate_with_epsilon: epsilon must be positive");
    }
    CompensatedSum acc;
    for (const SpectrumEntry& e : spectrum.entries) {
        if (e.eigenvalue > cutoff) {
            break;
        }
        const double term =
            static_cast<double>(e.multiplicity) * filter.laplace(e.eigenvalue * epsilon);
        acc.add(term);
    }
    return std::pow(epsilon, filter.poles.sk()) * acc.value();
}

EstimateResult estimate_coefficient(const Spectrum& spectrum, const Filter& filter,
                                    double cutoff, std::optional<double> m) {
    EstimateResult r;
    r.cutoff = cutoff;
    r.m = resolve_m(filter.poles, m);
    r.epsilon = epsilon_schedule(cutoff, r.m);
    r.estimate = estimate_with_epsilon(spectrum, filter, cutoff, r.epsilon);
    std::uint64_t n = 0;
    for (const SpectrumEntry& e : spectrum.entries) {
        if (e.eigenvalue > cutoff) {
            break;
        }
        n += e.multiplicity;
    }
    r.n_terms = n;
    fill_oracle(r, spectrum, filter);
    return r;
}

double to_zeta_residue(double c_k, double s_k) {
    return c_k / gamma(s_k);
}

double dixmier_baseline(const Spectrum& spectrum, double s0, double cutoff) {
    if (!(cutoff > 1.0)) {
        throw InvalidCutoff("dixmier_baseline: cutoff must exceed 1");
    }
    if (!(s0 > 0.0)) {
        throw InvalidArgument("dixmier_baseline: s0 must be positive");
    }
    CompensatedSum acc;
    for (const SpectrumEntry& e : spectrum.entries) {
        if (e.eigenvalue > cutoff) {
            break;
        }
        acc.add(static_cast<double>(e.multiplicity) * std::pow(e.eigenvalue, -s0));
    }
    return acc.value() / std::log(cutoff);
}

std::vector<EstimateResult> sweep(const Spectrum& spectrum, const Filter& filter,
                                  const std::vector<double>& cutoffs,
                                  std::optional<double> m) {
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        if (i > 0 && !(cutoffs[i] > cutoffs[i - 1])) {
            throw InvalidArgument("sweep: cutoffs must be strictly increasing");
        }
    }
    std::vector<EstimateResult> out;
    out.reserve(cutoffs.size());
    for (const double cutoff : cutoffs) {
        out.push_back(estimate_coefficient(spectrum, filter, cutoff, m));
    }
    return out;
}

double convergence_slope(const std::vector<EstimateResult>& results) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const EstimateResult& r : results) {
        if (!r.oracle.has_value() || !r.abs_error.has_value() || *r.abs_error == 0.0) {
            continue;
        }
        xs.push_back(std::log(r.epsilon));
        ys.push_back(std::log(std::fabs(*r.abs_error)));
    }
    if (xs.size() < 3) {
        throw InsufficientData("convergence_slope: need >= 3 results with oracle and nonzero error");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) {
        throw InsufficientData("convergence_slope: all results share one epsilon");
    }
    return sxy / sxx;
}

}  // namespace specres

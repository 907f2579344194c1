#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specres/filters.hpp"
#include "specres/models.hpp"

namespace specres {

struct EstimateResult {
    double cutoff = 0.0;    // truncation level Lambda
    double m = 0.0;         // schedule parameter
    double epsilon = 0.0;   // m ln(cutoff)/cutoff, exactly as computed
    double estimate = 0.0;  // estimated heat coefficient c_k
    std::optional<double> oracle;
    std::optional<double> abs_error;
    std::optional<double> rel_error;
    std::uint64_t n_terms = 0;  // spectrum entries <= cutoff, with multiplicity
};

// The coupling epsilon = m ln(cutoff)/cutoff between truncation and
// rescaling. Throws InvalidCutoff if cutoff <= 1, InvalidArgument if m <= 0.
double epsilon_schedule(double cutoff, double m);

// Pre-limit value epsilon^(s_k) * sum over eigenvalues in (0, cutoff] of
// multiplicity * F(lambda * epsilon), compensated summation in ascending
// eigenvalue order.
double estimate_with_epsilon(const Spectrum& spectrum, const Filter& filter,
                             double cutoff, double epsilon);

// Runs estimate_with_epsilon on the schedule. Default m is s_0 - s_k + 1;
// a user-provided m <= s_0 - s_k throws ScheduleViolation. Oracle and error
// fields are filled when the spectrum carries matching heat data.
EstimateResult estimate_coefficient(const Spectrum& spectrum, const Filter& filter,
                                    double cutoff, std::optional<double> m = {});

// Converts a heat coefficient to the residue of the zeta function itself:
// res zeta = c_k / Gamma(s_k). Throws PoleOfGamma at nonpositive-integer s_k,
// where the coefficient is not a zeta residue; report c_k directly there.
double to_zeta_residue(double c_k, double s_k);

// Logarithmic counting baseline sum_{0 < lambda <= cutoff} mult * lambda^(-s0)
// divided by ln(cutoff); estimates the leading zeta residue. Multiply by
// Gamma(s0) before comparing against the heat coefficient c_0.
double dixmier_baseline(const Spectrum& spectrum, double s0, double cutoff);

// One estimate per cutoff; cutoffs must be strictly increasing and > 1.
std::vector<EstimateResult> sweep(const Spectrum& spectrum, const Filter& filter,
                                  const std::vector<double>& cutoffs,
                                  std::optional<double> m = {});

// Least-squares slope of ln|abs_error| against ln(epsilon). Needs >= 3
// results, each with an oracle and a nonzero error; throws InsufficientData.
double convergence_slope(const std::vector<EstimateResult>& results);

}  // namespace specres

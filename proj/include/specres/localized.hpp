#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specres/estimator.hpp"
#include "specres/filters.hpp"
#include "specres/models.hpp"

namespace specres {

// One eigenbasis vector: its eigenvalue and the diagonal matrix element
// <h phi, phi> of the localizing operator h. Multiplicities are unrolled
// into repeated eigenvalues because h may distinguish eigenvectors within
// an eigenspace.
struct WeightedEntry {
    double eigenvalue;
    double weight;
};

struct WeightedSpectrum {
    std::vector<WeightedEntry> entries;  // nondecreasing eigenvalues, all > 0
    double bound = 0.0;                  // >= max |weight|, stands for the norm of h
    std::string description;
    std::optional<OracleData> oracle;
};

enum class Parity { even, odd };

// Localized analogue of estimate_coefficient: epsilon^(s_k) * sum of
// weight * F(lambda * epsilon) over eigenvalues in (0, cutoff], compensated
// summation in ascending order. n_terms counts basis vectors, one per entry.
EstimateResult estimate_localized(const WeightedSpectrum& wspec, const Filter& filter,
                                  double cutoff, std::optional<double> m = {});

// Circle eigenvalues n^2 unrolled to two basis vectors each, weight 1 when n
// matches the requested parity and 0 otherwise (h = projection onto the kept
// modes). Requires cutoff >= 4. Heat data: exponents (1/2, 0) with localized
// coefficients (sqrt(pi)/2, -1) for even and (sqrt(pi)/2, 0) for odd.
WeightedSpectrum circle_projection_weights(double cutoff, Parity keep);

// Reads "eigenvalue,weight" lines; an optional "#bound=<float>" header
// overrides the bound (which otherwise becomes max |weight|). Same comment
// and error conventions as load_spectrum. Entries are sorted, not merged.
WeightedSpectrum load_weighted_spectrum(const std::string& path);

}  // namespace specres

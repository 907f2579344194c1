#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace specres {

struct SpectrumEntry {
    double eigenvalue;
    std::uint64_t multiplicity;
};

// Known heat-expansion data attached to a model spectrum: exponents s_i in
// decreasing order and the matching coefficients c_i.
struct OracleData {
    std::vector<double> poles;
    std::vector<double> coefficients;
};

// Eigenvalue list of a positive operator, nondecreasing, zero modes excluded.
struct Spectrum {
    std::vector<SpectrumEntry> entries;
    std::string description;
    std::optional<OracleData> oracle;
};

// Laplacian on the circle: eigenvalues n^2 with multiplicity 2, n >= 1,
// n^2 <= cutoff. Heat data: exponents (1/2, 0), coefficients (sqrt(pi), -1).
Spectrum circle_spectrum(double cutoff);

// Laplacian on the square flat 2-torus: eigenvalues p^2 + q^2 over integer
// pairs != (0,0), multiplicities aggregated per distinct value. Heat data:
// exponents (1, 0), coefficients (pi, -1).
Spectrum torus2_spectrum(double cutoff);

// Laplacian on the unit round 2-sphere: eigenvalues l(l+1), multiplicity
// 2l+1, l >= 1. Heat data: exponents (1, 0), coefficients (1, -2/3).
Spectrum sphere_spectrum(double cutoff);

// Reads "eigenvalue,multiplicity" lines ('#' comments and blank lines are
// skipped), sorts, and merges duplicate eigenvalues. Throws IoError,
// ParseError, EmptySpectrum, or NonpositiveEigenvalue.
Spectrum load_spectrum(const std::string& path);

}  // namespace specres

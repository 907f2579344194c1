#include "specres/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "specres/errors.hpp"

namespace specres {
namespace {

const double kSqrtPi = 1.7724538509055161;

std::uint64_t isqrt_floor(double v) {
    if (v < 0.0) {
        return 0;
    }
    auto r = static_cast<std::uint64_t>(std::floor(std::sqrt(v)));
    while ((static_cast<double>(r) + 1.0) * (static_cast<double>(r) + 1.0) <= v) {
        ++r;
    }
    while (r > 0 && static_cast<double>(r) * static_cast<double>(r) > v) {
        --r;
    }
    return r;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

double parse_double(const std::string& text, const std::string& path, long line,
                    const char* what) {
    std::istringstream in(trim(text));
    double v = 0.0;
    char leftover = 0;
    if (!(in >> v) || (in >> leftover)) {
        throw ParseError(path, line, std::string("malformed ") + what + " '" + text + "'");
    }
    if (!std::isfinite(v)) {
        throw ParseError(path, line, std::string(what) + " must be finite");
    }
    return v;
}

}  // namespace

Spectrum circle_spectrum(double cutoff) {
    if (!(cutoff >= 1.0)) {
        throw InvalidArgument("circle_spectrum: cutoff must be >= 1");
    }
    Spectrum s;
    const std::uint64_t n_max = isqrt_floor(cutoff);
    s.entries.reserve(n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const double lam = static_cast<double>(n) * static_cast<double>(n);
        s.entries.push_back({lam, 2});
    }
    s.description = "circle";
    s.oracle = OracleData{{0.5, 0.0}, {kSqrtPi, -1.0}};
    return s;
}

Spectrum torus2_spectrum(double cutoff) {
    if (!(cutoff >= 1.0)) {
        throw InvalidArgument("torus2_spectrum: cutoff must be >= 1");
    }
    Spectrum s;
    // Quadrant walk with aggregation into fixed-size count blocks: memory
    // stays bounded by the block while the entry list grows with the number
    // of distinct representable values.
    const auto top = static_cast<std::uint64_t>(std::floor(cutoff));
    const std::uint64_t p_max = isqrt_floor(cutoff);
    const std::uint64_t block = std::uint64_t{1} << 22;
    std::vector<std::uint32_t> counts;
    for (std::uint64_t lo = 1; lo <= top; lo += block) {
        const std::uint64_t hi = std::min(top, lo + block - 1);
        counts.assign(hi - lo + 1, 0);
        for (std::uint64_t p = 0; p <= p_max; ++p) {
            const std::uint64_t pp = p * p;
            if (pp > hi) {
                break;
            }
            std::uint64_t q = 0;
            if (pp < lo) {
                q = isqrt_floor(static_cast<double>(lo - pp));
                while (pp + q * q < lo) {
                    ++q;
                }
            }
            std::uint64_t q_top = isqrt_floor(static_cast<double>(hi - pp));
            for (; q <= q_top; ++q) {
                const std::uint64_t v = pp + q * q;
                counts[v - lo] += (p > 0 && q > 0) ? 4 : 2;
            }
        }
        for (std::uint64_t i = 0; i <= hi - lo; ++i) {
            if (counts[i] != 0) {
                s.entries.push_back({static_cast<double>(lo + i), counts[i]});
            }
        }
    }
    s.description = "torus2";
    s.oracle = OracleData{{1.0, 0.0}, {M_PI, -1.0}};
    return s;
}

Spectrum sphere_spectrum(double cutoff) {
    if (!(cutoff >= 2.0)) {
        throw InvalidArgument("sphere_spectrum: cutoff must be >= 2");
    }
    Spectrum s;
    for (std::uint64_t l = 1;; ++l) {
        const double lam = static_cast<double>(l) * static_cast<double>(l + 1);
        if (lam > cutoff) {
            break;
        }
        s.entries.push_back({lam, 2 * l + 1});
    }
    s.description = "sphere";
    s.oracle = OracleData{{1.0, 0.0}, {1.0, -2.0 / 3.0}};
    return s;
}

Spectrum load_spectrum(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open spectrum file '" + path + "'");
    }
    Spectrum s;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(line);
        if (body.empty() || body[0] == '#') {
            continue;
        }
        const std::size_t comma = body.find(',');
        if (comma == std::string::npos) {
            throw ParseError(path, lineno, "expected 'eigenvalue,multiplicity'");
        }
        const double lam = parse_double(body.substr(0, comma), path, lineno, "eigenvalue");
        if (lam <= 0.0) {
            throw NonpositiveEigenvalue(path + ":" + std::to_string(lineno) +
                                        ": eigenvalue must be positive");
        }
        const double mult_raw =
            parse_double(body.substr(comma + 1), path, lineno, "multiplicity");
        if (mult_raw < 1.0 || mult_raw != std::floor(mult_raw) || mult_raw > 1e18) {
            throw ParseError(path, lineno, "multiplicity must be a positive integer");
        }
        s.entries.push_back({lam, static_cast<std::uint64_t>(mult_raw)});
    }
    if (s.entries.empty()) {
        throw EmptySpectrum("spectrum file '" + path + "' has no entries");
    }
    std::stable_sort(s.entries.begin(), s.entries.end(),
                     [](const SpectrumEntry& a, const SpectrumEntry& b) {
                         return a.eigenvalue < b.eigenvalue;
                     });
    std::vector<SpectrumEntry> merged;
    merged.reserve(s.entries.size());
    for (const SpectrumEntry& e : s.entries) {
        if (!merged.empty() && merged.back().eigenvalue == e.eigenvalue) {
            merged.back().multiplicity += e.multiplicity;
        } else {
            merged.push_back(e);
        }
    }
    s.entries = std::move(merged);
    s.description = path;
    return s;
}

}  // namespace specres

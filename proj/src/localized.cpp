#include "specres/localized.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "specres/errors.hpp"
#include "specres/summation.hpp"

namespace specres {
namespace {

const double kSqrtPiHalf = 0.88622692545275805;

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

void fill_oracle(EstimateResult& r, const WeightedSpectrum& wspec, const Filter& filter) {
    if (!wspec.oracle.has_value()) {
        return;
    }
    const OracleData& oracle = *wspec.oracle;
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

EstimateResult estimate_localized(const WeightedSpectrum& wspec, const Filter& filter,
                                  double cutoff, std::optional<double> m) {
    EstimateResult r;
    r.cutoff = cutoff;
    r.m = resolve_m(filter.poles, m);
    r.epsilon = epsilon_schedule(cutoff, r.m);
    // Same accumulation shape as the unlocalized estimator, so weight 1
    // reproduces it bit for bit on matched inputs.
    CompensatedSum acc;
    std::uint64_t n = 0;
    for (const WeightedEntry& e : wspec.entries) {
        if (e.eigenvalue > cutoff) {
            break;
        }
        if (!std::isfinite(e.weight)) {
            throw InvalidArgument("estimate_localized: weights must be finite");
        }
        acc.add(e.weight * filter.laplace(e.eigenvalue * r.epsilon));
        ++n;
    }
    r.estimate = std::pow(r.epsilon, filter.poles.sk()) * acc.value();
    r.n_terms = n;
    fill_oracle(r, wspec, filter);
    return r;
}

WeightedSpectrum circle_projection_weights(double cutoff, Parity keep) {
    if (!(cutoff >= 4.0)) {
        throw InvalidArgument("circle_projection_weights: cutoff must be >= 4");
    }
    WeightedSpectrum w;
    const auto n_max = static_cast<std::uint64_t>(std::floor(std::sqrt(cutoff)));
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const double lam = static_cast<double>(n) * static_cast<double>(n);
        if (lam > cutoff) {
            break;
        }
        const bool is_even = (n % 2 == 0);
        const double weight = (is_even == (keep == Parity::even)) ? 1.0 : 0.0;
        w.entries.push_back({lam, weight});
        w.entries.push_back({lam, weight});
    }
    w.bound = 1.0;
    w.description = (keep == Parity::even) ? "circle even projection" : "circle odd projection";
    // The kept-parity theta series carries half the leading coefficient; its
    // constant term is -1 for even (the zero mode sits in the even sector)
    // and 0 for odd.
    const double c1 = (keep == Parity::even) ? -1.0 : 0.0;
    w.oracle = OracleData{{0.5, 0.0}, {kSqrtPiHalf, c1}};
    return w;
}

WeightedSpectrum load_weighted_spectrum(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open weighted spectrum file '" + path + "'");
    }
    WeightedSpectrum w;
    std::optional<double> bound_override;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        if (body[0] == '#') {
            if (body.rfind("#bound=", 0) == 0) {
                bound_override = parse_double(body.substr(7), path, lineno, "bound");
            }
            continue;
        }
        const std::size_t comma = body.find(',');
        if (comma == std::string::npos) {
            throw ParseError(path, lineno, "expected 'eigenvalue,weight'");
        }
        const double lam = parse_double(body.substr(0, comma), path, lineno, "eigenvalue");
        if (lam <= 0.0) {
            throw NonpositiveEigenvalue(path + ":" + std::to_string(lineno) +
                                        ": eigenvalue must be positive");
        }
        const double weight = parse_double(body.substr(comma + 1), path, lineno, "weight");
        w.entries.push_back({lam, weight});
    }
    if (w.entries.empty()) {
        throw EmptySpectrum("weighted spectrum file '" + path + "' has no entries");
    }
    std::stable_sort(w.entries.begin(), w.entries.end(),
                     [](const WeightedEntry& a, const WeightedEntry& b) {
                         return a.eigenvalue < b.eigenvalue;
                     });
    double max_abs = 0.0;
    for (const WeightedEntry& e : w.entries) {
        max_abs = std::max(max_abs, std::fabs(e.weight));
    }
    if (bound_override.has_value()) {
        if (*bound_override < max_abs) {
            throw ParseError(path, 0, "declared bound is smaller than max |weight|");
        }
        w.bound = *bound_override;
    } else {
        w.bound = max_abs;
    }
    w.description = path;
    return w;
}

}  // namespace specres

#include "specres/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "specres/errors.hpp"
#include "specres/quadrature.hpp"
#include "specres/special_functions.hpp"

namespace specres {
namespace {

// Row-major dense solve with partial pivoting; returns false on an exactly
// singular matrix. n stays tiny (one row per pole up to the target index).
bool solve_inplace(std::vector<double>& m, std::vector<double>& rhs, std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(m[r * n + col]) > std::fabs(m[pivot * n + col])) {
                pivot = r;
            }
        }
        if (m[pivot * n + col] == 0.0) {
            return false;
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(m[pivot * n + c], m[col * n + c]);
            }
            std::swap(rhs[pivot], rhs[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = m[r * n + col] / m[col * n + col];
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t c = col; c < n; ++c) {
                m[r * n + c] -= factor * m[col * n + c];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double v = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) {
            v -= m[i * n + c] * rhs[c];
        }
        rhs[i] = v / m[i * n + i];
    }
    return true;
}

double norm_1(const std::vector<double>& m, std::size_t n) {
    double best = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        double col = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            col += std::fabs(m[r * n + c]);
        }
        best = std::max(best, col);
    }
    return best;
}

// Condition estimate ||M||_1 * ||M^-1||_1, with the inverse assembled column
// by column from the same elimination.
double condition_estimate(const std::vector<double>& m, std::size_t n) {
    std::vector<double> inverse(n * n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> work = m;
        std::vector<double> unit(n, 0.0);
        unit[c] = 1.0;
        if (!solve_inplace(work, unit, n)) {
            return HUGE_VAL;
        }
        for (std::size_t r = 0; r < n; ++r) {
            inverse[r * n + c] = unit[r];
        }
    }
    return norm_1(m, n) * norm_1(inverse, n);
}

}  // namespace

PoleSet::PoleSet(std::vector<double> poles_in, std::size_t k_in)
    : poles(std::move(poles_in)), k(k_in) {
    if (poles.empty()) {
        throw InvalidArgument("pole set: at least one exponent required");
    }
    if (k >= poles.size()) {
        throw InvalidArgument("pole set: target index out of range");
    }
    for (std::size_t i = 0; i < poles.size(); ++i) {
        if (!std::isfinite(poles[i])) {
            throw InvalidArgument("pole set: exponents must be finite");
        }
        if (i > 0 && poles[i - 1] - poles[i] < 1e-6) {
            throw InvalidArgument(
                "pole set: exponents must decrease strictly with gaps >= 1e-6");
        }
    }
}

double Filter::time_value(double t) const {
    if (!(t > 0.0)) {
        throw InvalidArgument("time_value: t must be positive");
    }
    double s = 0.0;
    for (std::size_t j = 0; j < scales.size(); ++j) {
        if (t >= scales[j]) {
            s += weights[j] * std::exp(-t / scales[j]);
        }
    }
    return s;
}

double Filter::laplace(double x) const {
    if (!(x >= 0.0)) {
        throw InvalidArgument("laplace: x must be nonnegative");
    }
    double s = 0.0;
    for (std::size_t j = 0; j < scales.size(); ++j) {
        const double ax = scales[j] * x;
        s += weights[j] * scales[j] * std::exp(-1.0 - ax) / (1.0 + ax);
    }
    return s;
}

double basis_moment(double scale, double s) {
    if (!(scale >= 1.0)) {
        throw InvalidArgument("basis_moment: scale must be >= 1");
    }
    return std::pow(scale, 1.0 - s) * upper_gamma(1.0 - s, 1.0);
}

Filter build_filter(const PoleSet& poles) {
    std::vector<double> scales(poles.k + 1);
    for (std::size_t j = 0; j <= poles.k; ++j) {
        scales[j] = std::ldexp(1.0, static_cast<int>(j));
    }
    return build_filter(poles, std::move(scales));
}

Filter build_filter(const PoleSet& poles, std::vector<double> scales) {
    const std::size_t n = poles.k + 1;
    if (scales.size() != n) {
        throw InvalidScales("build_filter: need one scale per pole up to the target index");
    }
    std::sort(scales.begin(), scales.end());
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(scales[j]) || scales[j] < 1.0) {
            throw InvalidScales("build_filter: scales must be finite and >= 1");
        }
        if (j > 0 && scales[j] == scales[j - 1]) {
            throw InvalidScales("build_filter: scales must be distinct");
        }
    }

    std::vector<double> matrix(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            matrix[i * n + j] = basis_moment(scales[j], poles.poles[i]);
        }
    }
    const double cond = condition_estimate(matrix, n);
    if (!(cond <= 1e12)) {
        throw IllConditioned("build_filter: moment matrix condition estimate " +
                             std::to_string(cond) + " exceeds 1e12");
    }

    std::vector<double> weights(n, 0.0);
    weights[n - 1] = 1.0;
    std::vector<double> work = matrix;
    if (!solve_inplace(work, weights, n)) {
        throw IllConditioned("build_filter: moment matrix is singular");
    }

    // Under the gauge that fixes the first unnormalized weight to 1, the
    // k-th moment before rescaling is exactly 1/w_0.
    const double normalization = 1.0 / weights[0];
    return Filter{poles, std::move(scales), std::move(weights), normalization};
}

double moment_quadrature(const Filter& filter, double s) {
    // The integrand jumps at every scale, so integrate per segment. Beyond
    // 60 times the largest scale the integrand is below 1e-20 of its peak.
    const double top = filter.scales.back() * 60.0;
    const auto integrand = [&](double t) {
        return std::pow(t, -s) * filter.time_value(t);
    };
    const double seg_tol = 1e-11 / static_cast<double>(filter.scales.size() + 1);
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < filter.scales.size(); ++j) {
        total += integrate(integrand, filter.scales[j], filter.scales[j + 1], seg_tol);
    }
    total += integrate(integrand, filter.scales.back(), top, seg_tol);
    return total;
}

}  // namespace specres

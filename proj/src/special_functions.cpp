#include "specres/special_functions.hpp"

#include <cmath>
#include <cstdlib>

#include "specres/errors.hpp"

namespace specres {
namespace {

// Lanczos approximation, g = 7, 9 terms.
const double kLanczos[9] = {
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
};

const double kSqrtTwoPi = 2.5066282746310002;
const double kEulerGamma = 0.57721566490153287;

// zeta(2) .. zeta(50), for the ln Gamma(1+a) series on |a| <= 0.5.
const double kZeta[49] = {
    1.6449340668482264,
    1.2020569031595942,
    1.0823232337111381,
    1.03692775514337,
    1.0173430619844492,
    1.0083492773819229,
    1.0040773561979444,
    1.0020083928260821,
    1.000994575127818,
    1.0004941886041194,
    1.000246086553308,
    1.0001227133475785,
    1.0000612481350588,
    1.000030588236307,
    1.0000152822594086,
    1.0000076371976379,
    1.000003817293265,
    1.0000019082127165,
    1.0000009539620338,
    1.0000004769329869,
    1.0000002384505027,
    1.0000001192199259,
    1.0000000596081891,
    1.0000000298035034,
    1.0000000149015549,
    1.0000000074507118,
    1.000000003725334,
    1.0000000018626598,
    1.0000000009313275,
    1.0000000004656628,
    1.0000000002328311,
    1.0000000001164155,
    1.0000000000582077,
    1.0000000000291038,
    1.0000000000145519,
    1.000000000007276,
    1.000000000003638,
    1.000000000001819,
    1.0000000000009095,
    1.0000000000004547,
    1.0000000000002274,
    1.0000000000001137,
    1.0000000000000568,
    1.0000000000000284,
    1.0000000000000142,
    1.0000000000000071,
    1.0000000000000036,
    1.0000000000000018,
    1.0000000000000009,
};

// sin(pi x) with exact range reduction, so reflection stays accurate for
// large negative arguments.
double sin_pi(double x) {
    const double m = std::floor(x);
    const double r = x - m;
    const double s = (r <= 0.5) ? std::sin(M_PI * r) : std::sin(M_PI * (1.0 - r));
    const bool odd = std::fmod(m, 2.0) != 0.0;
    return odd ? -s : s;
}

// Gamma(z) for z >= 0.5; log form above 100 to dodge pow/exp overflow.
double gamma_positive(double z) {
    const double x = z - 1.0;
    double ag = kLanczos[0];
    for (int k = 1; k < 9; ++k) {
        ag += kLanczos[k] / (x + k);
    }
    const double t = x + 7.5;
    if (z > 100.0) {
        return std::exp((x + 0.5) * std::log(t) - t + std::log(kSqrtTwoPi * ag));
    }
    return kSqrtTwoPi * ag * std::pow(t, x + 0.5) * std::exp(-t);
}

// ln Gamma(1+a) on |a| <= 0.5 via the zeta series
// -gamma*a + sum_{n>=2} (-1)^n zeta(n) a^n / n.
double lgamma1p(double a) {
    double s = 0.0;
    for (int k = 50; k >= 2; --k) {
        double term = kZeta[k - 2] / k;
        if (k % 2 == 1) {
            term = -term;
        }
        s = s * a + term;
    }
    s = s * a;
    return a * (s - kEulerGamma);
}

// (Gamma(1+a) - 1) / a, continuous through a = 0.
double gamma1pm1_over_a(double a) {
    if (a == 0.0) {
        return -kEulerGamma;
    }
    return std::expm1(lgamma1p(a)) / a;
}

// Gamma(alpha, x) for |alpha| <= 0.5, x < 1.5. Series form that stays
// accurate across alpha = 0, where the two divergent pieces cancel.
double seed_small_x(double alpha, double x) {
    const double lx = std::log(x);
    const double y = alpha * lx;
    const double e = (y != 0.0) ? std::expm1(y) / y : 1.0;
    double s = 0.0;
    double term = 1.0;
    for (int n = 1; n <= 200; ++n) {
        term *= -x / n;
        const double add = term / (n + alpha);
        s += add;
        if (std::fabs(add) < 1e-18 * (std::fabs(s) + 1e-300)) {
            return gamma1pm1_over_a(alpha) - lx * e - std::pow(x, alpha) * s;
        }
    }
    throw Error("incomplete gamma series did not converge");
}

// Regularized lower integral P(a, x) by series; valid for a > 0, x <= a + 1.
double p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double dl = sum;
    for (int n = 0; n < 10000; ++n) {
        ap += 1.0;
        dl *= x / ap;
        sum += dl;
        if (std::fabs(dl) < std::fabs(sum) * 1e-17) {
            return sum * std::exp(-x + a * std::log(x)) / gamma_positive(a);
        }
    }
    throw Error("incomplete gamma series did not converge");
}

// Continued fraction for Gamma(a, x) / (x^a e^-x), modified Lentz.
double cf_factor(double a, double x) {
    const double kFpMin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin) {
            d = kFpMin;
        }
        c = b + an / c;
        if (std::fabs(c) < kFpMin) {
            c = kFpMin;
        }
        d = 1.0 / d;
        const double dl = d * c;
        h *= dl;
        if (std::fabs(dl - 1.0) <= 1e-16) {
            return h;
        }
    }
    throw Error("incomplete gamma continued fraction did not converge");
}

}  // namespace

double gamma(double a) {
    if (!std::isfinite(a)) {
        throw InvalidArgument("gamma: argument must be finite");
    }
    const double nearest = std::round(a);
    if (nearest <= 0.0 && std::fabs(a - nearest) <= 1e-9) {
        throw PoleOfGamma("gamma: argument within 1e-9 of a nonpositive integer");
    }
    if (a >= 0.5) {
        return gamma_positive(a);
    }
    return M_PI / (sin_pi(a) * gamma_positive(1.0 - a));
}

double upper_gamma(double a, double x) {
    if (!std::isfinite(a) || !std::isfinite(x)) {
        throw InvalidArgument("upper_gamma: arguments must be finite");
    }
    if (x <= 0.0) {
        throw InvalidArgument("upper_gamma: x must be positive");
    }
    if (a > 0.25) {
        if (x > a + 1.0) {
            return std::pow(x, a) * std::exp(-x) * cf_factor(a, x);
        }
        return gamma_positive(a) * (1.0 - p_series(a, x));
    }
    if (x >= 1.5) {
        return std::pow(x, a) * std::exp(-x) * cf_factor(a, x);
    }
    // Shift a into (-0.5, 0.5], evaluate the series seed there, then walk
    // back down. Every divisor on the way has magnitude >= 0.5.
    const int steps = static_cast<int>(std::floor(0.5 - a));
    const double alpha = a + steps;
    double g = seed_small_x(alpha, x);
    const double emx = std::exp(-x);
    double aj = alpha;
    for (int j = 0; j < steps; ++j) {
        aj -= 1.0;
        g = (g - std::pow(x, aj) * emx) / aj;
    }
    return g;
}

}  // namespace specres

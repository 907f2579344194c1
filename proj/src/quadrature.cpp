#include "specres/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "specres/errors.hpp"

namespace specres {
namespace {

// 15-point Kronrod extension of 7-point Gauss; abscissae on [0, 1].
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double err;
    double lo;
    double hi;
    double val;
    bool operator<(const Panel& other) const { return err < other.err; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) {
            resg += kWg[j / 2] * (f1 + f2);
        }
    }
    return Panel{std::fabs((resk - resg) * h), lo, hi, resk * h};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, double rel_tol, int max_panels) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
        throw InvalidArgument("integrate: malformed interval");
    }
    if (hi == lo) {
        return 0.0;
    }

    std::priority_queue<Panel> worst_first;
    Panel first = evaluate_panel(f, lo, hi);
    double total_val = first.val;
    double total_err = first.err;
    worst_first.push(first);
    int panels = 1;

    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total_val))) {
        if (panels >= max_panels) {
            throw QuadratureFailure("integrate: tolerance not met within panel budget");
        }
        const Panel p = worst_first.top();
        worst_first.pop();
        const double mid = 0.5 * (p.lo + p.hi);
        const Panel left = evaluate_panel(f, p.lo, mid);
        const Panel right = evaluate_panel(f, mid, p.hi);
        total_val += left.val + right.val - p.val;
        total_err += left.err + right.err - p.err;
        worst_first.push(left);
        worst_first.push(right);
        panels += 2;
    }
    return total_val;
}

}  // namespace specres

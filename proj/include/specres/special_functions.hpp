#pragma once

namespace specres {

// Gamma(a) for real a away from the nonpositive integers.
//
// Relative accuracy is ~1e-14 on [-30, 30]. Throws PoleOfGamma when a lies
// within 1e-9 of 0, -1, -2, ...; throws InvalidArgument on non-finite a.
double gamma(double a);

// Upper incomplete gamma integral Gamma(a, x) = int_x^inf t^(a-1) e^(-t) dt.
//
// Defined for any real a as long as x > 0, which the filter moments require
// (they evaluate at negative a whenever a pole exceeds 1). Relative accuracy
// is ~1e-13 for a in [-10, 10], x in [0.01, 50]. Throws InvalidArgument on
// x <= 0 or non-finite input.
double upper_gamma(double a, double x);

}  // namespace specres

#pragma once

#include <cmath>

namespace specres {

// Neumaier-compensated accumulator. Bitwise deterministic for a fixed visit
// order, which the estimators rely on for reproducible reports.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace specres

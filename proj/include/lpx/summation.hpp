#pragma once

#include <cmath>

namespace lpx {

// Neumaier's variant of Kahan summation. Exact for the running error term
// as long as no intermediate overflows.
class CompensatedSum {
public:
    constexpr CompensatedSum() = default;
    constexpr explicit CompensatedSum(double init) : sum_(init) {}

    CompensatedSum& operator+=(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    CompensatedSum& operator-=(double x) { return *this += -x; }

    [[nodiscard]] constexpr double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// x^4 by two squarings; bit-reproducible across platforms unlike pow().
constexpr double pow4(double x) {
    const double s = x * x;
    return s * s;
}

}  // namespace lpx

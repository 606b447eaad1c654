#pragma once

#include <cmath>

#include "symflat/geometry.hpp"

namespace symflat {

// Neumaier's variant of Kahan summation. Callers feed terms in index order,
// which is what makes results identical across thread counts.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
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

class CompensatedSum2 {
public:
    void add(const Vec2& v) { x_.add(v.x); y_.add(v.y); }
    Vec2 value() const { return {x_.value(), y_.value()}; }

private:
    CompensatedSum x_;
    CompensatedSum y_;
};

}  // namespace symflat

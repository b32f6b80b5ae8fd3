#pragma once

#include <cmath>
#include <limits>

namespace dofpp {

enum class SummationMode { plain, compensated };

struct SeriesControl {
    double abs_tol = 1e-15;
    double rel_tol = 1e-12;
    int max_terms = 10000;
    SummationMode summation_mode = SummationMode::compensated;

    void validate() const;
};

// The same policy with the absolute floor removed, for positive quantities
// (moments) whose GML factor can be far below abs_tol.
inline SeriesControl relative_only(SeriesControl c)
{
    c.abs_tol = std::numeric_limits<double>::min();
    return c;
}

// Running sum with optional Neumaier compensation. Also tracks the largest
// term so callers can estimate the digits lost to cancellation.
class Accumulator {
public:
    explicit Accumulator(SummationMode mode = SummationMode::compensated) : mode_(mode) {}

    void add(double x)
    {
        double a = std::fabs(x);
        if (a > max_abs_) max_abs_ = a;
        abs_sum_ += a;
        if (mode_ == SummationMode::plain) {
            sum_ += x;
            return;
        }
        double t = sum_ + x;
        if (std::fabs(sum_) >= a)
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double sum() const { return sum_ + comp_; }
    double max_abs() const { return max_abs_; }
    double abs_sum() const { return abs_sum_; }

    // Rounding error bound for the value returned by sum().
    double rounding_error() const
    {
        constexpr double eps = std::numeric_limits<double>::epsilon();
        if (mode_ == SummationMode::plain) return eps * abs_sum_;
        return 4.0 * eps * max_abs_ + eps * std::fabs(sum());
    }

private:
    SummationMode mode_;
    double sum_ = 0.0;
    double comp_ = 0.0;
    double max_abs_ = 0.0;
    double abs_sum_ = 0.0;
};

} // namespace dofpp

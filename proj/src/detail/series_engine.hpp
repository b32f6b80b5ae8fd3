#pragma once

// Shared summation loop for the log-magnitude power series used by the
// special functions and the stable density.

#include "dofpp/error.hpp"
#include "dofpp/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dofpp::detail {

constexpr double kLogMax = 709.0;

// Per-term data for the generic summation loop. sign == 0 marks an exact zero.
struct Term {
    double logmag;
    int sign;
};

struct SeriesOutcome {
    double value;
    double error;
};

// Sums terms produced by next(j) until two consecutive non-zero terms are
// decreasing and below a tenth of the tolerance. Terms are exp(logmag) in
// units where the caller's scale is exp(log_scale). abort_logmag stops the
// loop as soon as a term is so large that the requested relative accuracy
// cannot survive the cancellation.
template <class Next>
inline
SeriesOutcome run_series(Next next, double log_scale, double abort_logmag, const SeriesControl& ctl,
                         SummationMode mode, const char* what)
{
    Accumulator acc(mode);
    double prev_logmag = std::numeric_limits<double>::infinity();
    int small = 0;
    double last = 0.0;
    const double abs_floor = ctl.abs_tol * std::exp(std::min(log_scale, kLogMax));
    for (int j = 0; j < ctl.max_terms; ++j) {
        Term tm = next(j);
        if (tm.sign == 0) continue;
        if (tm.logmag > kLogMax) throw OverflowError(std::string(what) + ": term overflow");
        if (tm.logmag > abort_logmag)
            throw CancellationError(std::string(what) + ": series terms too large for requested accuracy");
        double v = tm.sign * std::exp(tm.logmag);
        acc.add(v);
        double tol = std::max(abs_floor, ctl.rel_tol * std::fabs(acc.sum()));
        double mag = std::fabs(v);
        if (mag <= 0.1 * tol && tm.logmag < prev_logmag) {
            if (++small >= 2) {
                last = mag;
                double err = acc.rounding_error() + last;
                double s = acc.sum();
                if (err > std::max(abs_floor, ctl.rel_tol * std::fabs(s)))
                    throw CancellationError(std::string(what) + ": cancellation exceeds rel_tol");
                return {s, err};
            }
        } else {
            small = 0;
        }
        prev_logmag = tm.logmag;
    }
    throw ConvergenceError(std::string(what) + ": no convergence within max_terms");
}


} // namespace dofpp::detail

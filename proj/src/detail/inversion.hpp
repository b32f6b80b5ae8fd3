#pragma once

#include "dofpp/config.hpp"
#include "dofpp/error.hpp"
#include "dofpp/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dofpp::detail {

// Contour inversion of exp(log_f) at t with node doubling until two node
// counts agree; throws ConvergenceError when the estimate is not trusted.
inline double invert_checked(const Transform& log_f, double t, const char* what, double rel_tol = 1e-12,
                             double abs_tol = 1e-15, int max_nodes = 0)
{
    const Tuning& tu = tuning();
    InversionResult r;
    try {
        r = talbot_adaptive(log_f, t, tu.talbot_nodes, max_nodes > 0 ? max_nodes : tu.talbot_max_nodes, rel_tol, abs_tol);
    } catch (const NumericalError&) {
        throw ConvergenceError(std::string(what) + ": contour inversion did not converge");
    }
    if (!std::isfinite(r.value) || r.error > std::max(1e-8 * std::fabs(r.value), 1e-13))
        throw ConvergenceError(std::string(what) + ": contour inversion error too large");
    return r.value;
}

} // namespace dofpp::detail

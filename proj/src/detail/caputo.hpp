#pragma once

#include "dofpp/laplace.hpp"

#include <limits>
#include <vector>

namespace dofpp::detail {

// Caputo derivative of order nu at the last grid point; nu = 1 falls back to
// a backward difference so the same residual code covers integer orders.
inline double caputo_last(const std::vector<double>& v, double h, double nu)
{
    const int n = static_cast<int>(v.size()) - 1;
    if (nu == 1.0) return (v[n] - v[n - 1]) / h;
    SampledFunction f{v, h * n};
    return caputo_derivative(f, nu, std::numeric_limits<double>::infinity());
}

} // namespace dofpp::detail

#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dofpp {

enum class Exec { serial, parallel };

// Caps the OpenMP worker count (no-op without OpenMP). n <= 0 restores the default.
void set_max_threads(int n);
int max_threads();

// Evaluates f at every point of xs. Both paths produce identical output;
// the serial one is the reference used in tests and benchmarks.
template <class F>
std::vector<double> evaluate_grid(const std::vector<double>& xs, F&& f, Exec exec = Exec::parallel)
{
    std::vector<double> out(xs.size());
    const long n = static_cast<long>(xs.size());
    if (exec == Exec::serial) {
        for (long i = 0; i < n; ++i) out[i] = f(xs[i]);
        return out;
    }
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = f(xs[i]);
        } catch (...) {
#pragma omp critical(dofpp_grid_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

} // namespace dofpp

#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace dofpp {

using cplx = std::complex<double>;
using Transform = std::function<cplx(cplx)>;
using RealFunction = std::function<double(double)>;

enum class InversionMethod { talbot, gaver_stehfest };

struct LaplaceSpec {
    // F(eta). Must accept complex eta with Re > 0 for talbot.
    Transform transform;
    // Optional log F(eta); preferred when set. Lets transforms whose values
    // under/overflow on the contour be inverted.
    Transform log_transform;
    InversionMethod inversion_method = InversionMethod::talbot;
    int nodes = 32;
    double t_min = 1e-300;
    // Relative disagreement between the node count and a coarser one above
    // which the result is reported as divergent.
    double divergence_tol = 1e-4;

    void validate() const;
};

struct InversionResult {
    double value = 0.0;
    double error = 0.0;  // |f_N - f_N'| for the coarser node count N'
    double scale = 0.0;  // largest contour term; rounding floor is eps * scale
};

// f(t). Throws ConvergenceError when the divergence check fails.
double invert(const LaplaceSpec& spec, double t);
InversionResult invert_with_estimate(const LaplaceSpec& spec, double t);

// Talbot-contour sum with a fixed node count on log F.
InversionResult talbot_fixed(const Transform& log_f, double t, int nodes);

// Node count grown until two successive counts agree to
// max(rel_tol |f|, abs_tol, 64 eps scale). Throws ConvergenceError if
// max_nodes is reached first.
InversionResult talbot_adaptive(const Transform& log_f, double t, int start_nodes, int max_nodes,
                                double rel_tol, double abs_tol);

struct QuadSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_levels = 15;
};

// int_0^inf e^(-eta t) f(t) dt: tanh-sinh on [0, 1/eta] (handles an
// integrable singularity at 0), exp-sinh on the tail.
double forward(const RealFunction& f, double eta, const QuadSettings& quad = {});

// Values on the uniform grid t_i = i h, h = t_end / (values.size() - 1).
struct SampledFunction {
    std::vector<double> values;
    double t_end = 1.0;

    double step() const { return t_end / static_cast<double>(values.size() - 1); }
};

SampledFunction sample_uniform(const RealFunction& f, double t_end, int intervals, bool parallel = true);

// Riemann-Liouville integral of order alpha at t_end, product integration
// exact for piecewise-linear f. Throws ConvergenceError if the difference
// to the half-resolution result exceeds tol.
double rl_fractional_integral(const SampledFunction& f, double alpha, double tol = 1e-3);
// All grid points at once; entry i is the integral up to t_i.
std::vector<double> rl_fractional_integral_grid(const SampledFunction& f, double alpha);

// Caputo derivative of order nu at t_end by the L1 scheme.
double caputo_derivative(const SampledFunction& f, double nu, double tol = 1e-2);
std::vector<double> caputo_derivative_grid(const SampledFunction& f, double nu);

} // namespace dofpp

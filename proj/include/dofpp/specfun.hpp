#pragma once

#include "dofpp/series.hpp"

namespace dofpp {

// Gamma function. Throws PoleError at non-positive integers and OverflowError
// when |Gamma(x)| exceeds the double range.
double gamma_fn(double x);

// log|Gamma(x)|, with the sign of Gamma(x) stored in *sign when given.
// Reentrant (does not touch the global signgam).
double log_gamma(double x, int* sign = nullptr);

// 1/Gamma(x); exactly 0 at the poles.
double rgamma(double x);

struct GmlArgs {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double z = 0.0;

    void validate() const;
};

enum class GmlMethod { series, asymptotic, contour };

struct GmlResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error of value
    GmlMethod method = GmlMethod::series;
};

// E_{alpha,beta}(z) = sum_j z^j / Gamma(alpha j + beta).
double mittag_leffler(double alpha, double beta, double z, const SeriesControl& ctl = {});

// E^gamma_{alpha,beta}(z) = sum_j (gamma)_j z^j / (j! Gamma(alpha j + beta)).
// For z < 0 the series is tried first, then the algebraic expansion at
// infinity (alpha < 1), then inversion of the Laplace pair
// s^(alpha gamma - beta) / (s^alpha - z)^gamma at t = 1.
double gml(const GmlArgs& args, const SeriesControl& ctl = {});

// exp(log_factor) * E^gamma_{alpha,beta}(z), computed without forming the
// two factors separately, so results far outside the double range of either
// factor are still representable. ctl.abs_tol applies to the unscaled E.
GmlResult gml_scaled(const GmlArgs& args, double log_factor, const SeriesControl& ctl = {});

// Single-method evaluators, exposed for tests and cross-checks. They throw
// ConvergenceError / CancellationError when the method cannot meet ctl.
GmlResult gml_by_series(const GmlArgs& args, double log_factor, const SeriesControl& ctl);
GmlResult gml_by_asymptotic(const GmlArgs& args, double log_factor, const SeriesControl& ctl);
GmlResult gml_by_contour(const GmlArgs& args, double log_factor, const SeriesControl& ctl);

// E^k_{nu,beta}(-c t^nu) from the real-line integral representation, valid for beta < nu k + 1:
// (1/pi) int_0^inf e^-z z^(nu k - beta) Im[e^(i pi beta) (z^nu + c t^nu e^(i pi nu))^-k] dz.
double gml_integral_rep(int k, double nu, double beta, double c, double t);

// Leading algebraic tail of E^k_{nu,beta}(-c t^nu) as t -> inf:
// 1 / (c^k t^(nu k) Gamma(beta - nu k)).
double gml_tail(int k, double nu, double beta, double c, double t);

// Wright function W_{alpha,beta}(x) = sum_k x^k / (k! Gamma(alpha k + beta)), alpha > -1.
// Throws CancellationError when the running error estimate exceeds ctl.rel_tol.
double wright(double alpha, double beta, double x, const SeriesControl& ctl = {});

// Kummer 1F1(a; c; z). Negative z goes through Kummer's transformation when
// the direct series would cancel.
double kummer_1f1(double a, double c, double z, const SeriesControl& ctl = {});

} // namespace dofpp

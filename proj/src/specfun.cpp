#include "dofpp/specfun.hpp"

#include "dofpp/error.hpp"
#include "dofpp/laplace.hpp"
#include "detail/series_engine.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace dofpp {

using detail::kLogMax;
using detail::run_series;
using detail::Term;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = 3.14159265358979323846;

bool is_nonpositive_integer(double x)
{
    return x <= 0.0 && x == std::floor(x);
}

double log_pochhammer_step(double a, int j)
{
    return std::log(std::fabs(a + j));
}

} // namespace

void SeriesControl::validate() const
{
    require(abs_tol > 0.0, "SeriesControl requires abs_tol > 0");
    require(rel_tol > 0.0, "SeriesControl requires rel_tol > 0");
    require(max_terms >= 1, "SeriesControl requires max_terms >= 1");
}

void GmlArgs::validate() const
{
    require(alpha > 0.0, "gml requires alpha > 0");
    require(gamma > 0.0, "gml requires gamma > 0");
    require(std::isfinite(beta) && std::isfinite(z), "gml requires finite beta and z");
}

double gamma_fn(double x)
{
    if (std::isnan(x)) throw InvalidArgument("gamma_fn: NaN argument");
    if (is_nonpositive_integer(x)) throw PoleError("gamma_fn: pole at non-positive integer");
    double g = std::tgamma(x);
    if (!std::isfinite(g)) throw OverflowError("gamma_fn: result overflows double");
    return g;
}

double log_gamma(double x, int* sign)
{
    int s = 1;
    double v = ::lgamma_r(x, &s);
    if (sign) *sign = s;
    return v;
}

double rgamma(double x)
{
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 0.0 && x < 170.0) return 1.0 / std::tgamma(x);
    int s = 1;
    double lg = log_gamma(x, &s);
    return s * std::exp(-lg);
}

// ---- generalized Mittag-Leffler ------------------------------------------

GmlResult gml_by_series(const GmlArgs& a, double lf, const SeriesControl& ctl)
{
    if (a.z == 0.0) return {std::exp(lf) * rgamma(a.beta), 0.0, GmlMethod::series};
    const double logz = std::log(std::fabs(a.z));
    const bool neg = a.z < 0.0;
    double P = 0.0;  // log((gamma)_j |z|^j / j!)
    auto next = [&](int j) {
        double arg = a.alpha * j + a.beta;
        Term tm{0.0, 0};
        if (!is_nonpositive_integer(arg)) {
            int sg = 1;
            double lg = log_gamma(arg, &sg);
            tm.logmag = lf + P - lg;
            tm.sign = sg * ((neg && (j & 1)) ? -1 : 1);
        }
        P += log_pochhammer_step(a.gamma, j) - std::log(j + 1.0) + logz;
        return tm;
    };
    double bound = std::max(1.0, std::fabs(rgamma(a.beta)));
    double abort = neg ? lf + std::log(bound * 10.0 * ctl.rel_tol / (4.0 * kEps)) : kLogMax;
    auto out = run_series(next, lf, abort, ctl, ctl.summation_mode, "gml series");
    return {out.value, out.error, GmlMethod::series};
}

GmlResult gml_by_asymptotic(const GmlArgs& a, double lf, const SeriesControl& ctl)
{
    if (!(a.z < 0.0) || !(a.alpha < 1.0))
        throw ConvergenceError("gml asymptotic: needs z < 0 and alpha < 1");
    const double x = -a.z;
    const double logx = std::log(x);
    Accumulator acc(ctl.summation_mode);
    double Q = lf - a.gamma * logx;  // log((gamma)_n / n! x^(-gamma-n))
    double prev = std::numeric_limits<double>::infinity();
    const double abs_floor = ctl.abs_tol * std::exp(std::min(lf, kLogMax));
    int small = 0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        double arg = a.beta - a.alpha * (a.gamma + n);
        double Qn = Q;
        Q += log_pochhammer_step(a.gamma, n) - std::log(n + 1.0) - logx;
        if (is_nonpositive_integer(arg)) continue;
        int sg = 1;
        double lg = log_gamma(arg, &sg);
        double logmag = Qn - lg;
        if (logmag > kLogMax) break;
        double v = ((n & 1) ? -1.0 : 1.0) * sg * std::exp(logmag);
        // Optimal truncation: stop once terms grow again.
        if (logmag > prev && n > 0) break;
        acc.add(v);
        double tol = std::max(abs_floor, ctl.rel_tol * std::fabs(acc.sum()));
        if (std::fabs(v) <= 0.1 * tol) {
            if (++small >= 2) {
                double err = acc.rounding_error() + std::fabs(v);
                return {acc.sum(), err, GmlMethod::asymptotic};
            }
        } else {
            small = 0;
        }
        prev = logmag;
    }
    throw ConvergenceError("gml asymptotic: smallest term above tolerance");
}

GmlResult gml_by_contour(const GmlArgs& a, double lf, const SeriesControl& ctl)
{
    if (!(a.z < 0.0) || a.alpha > 1.0)
        throw ConvergenceError("gml contour: needs z < 0 and alpha <= 1");
    const double x = -a.z;
    const double p = a.alpha * a.gamma - a.beta;
    const double al = a.alpha, ga = a.gamma;
    Transform logF = [=](cplx s) {
        cplx ls = std::log(s);
        return p * ls - ga * std::log(std::exp(al * ls) + x) + lf;
    };
    int start = std::max(24, 2 * static_cast<int>(std::ceil(0.25 * ga)) + 16);
    InversionResult r = talbot_adaptive(logF, 1.0, start, 1024, ctl.rel_tol,
                                        ctl.abs_tol * std::exp(std::min(lf, kLogMax)));
    return {r.value, r.error, GmlMethod::contour};
}

GmlResult gml_scaled(const GmlArgs& a, double lf, const SeriesControl& ctl)
{
    a.validate();
    ctl.validate();
    if (a.z >= 0.0 || a.alpha > 1.0) return gml_by_series(a, lf, ctl);
    try {
        return gml_by_series(a, lf, ctl);
    } catch (const NumericalError&) {
    }
    if (a.alpha < 1.0) {
        try {
            return gml_by_asymptotic(a, lf, ctl);
        } catch (const NumericalError&) {
        }
    }
    return gml_by_contour(a, lf, ctl);
}

double gml(const GmlArgs& a, const SeriesControl& ctl)
{
    return gml_scaled(a, 0.0, ctl).value;
}

double mittag_leffler(double alpha, double beta, double z, const SeriesControl& ctl)
{
    require(alpha > 0.0, "mittag_leffler requires alpha > 0");
    ctl.validate();
    if (z == 0.0) return rgamma(beta);
    const double logz = std::log(std::fabs(z));
    const bool neg = z < 0.0;
    auto next = [&](int j) {
        double arg = alpha * j + beta;
        if (is_nonpositive_integer(arg)) return Term{0.0, 0};
        int sg = 1;
        double lg = log_gamma(arg, &sg);
        return Term{j * logz - lg, sg * ((neg && (j & 1)) ? -1 : 1)};
    };
    double bound = std::max(1.0, std::fabs(rgamma(beta)));
    double abort = neg ? std::log(bound * 10.0 * ctl.rel_tol / (4.0 * kEps)) : kLogMax;
    try {
        return run_series(next, 0.0, abort, ctl, ctl.summation_mode, "mittag_leffler series").value;
    } catch (const NumericalError&) {
        if (!neg || alpha > 1.0) throw;
    }
    GmlArgs a{alpha, beta, 1.0, z};
    if (alpha < 1.0) {
        try {
            return gml_by_asymptotic(a, 0.0, ctl).value;
        } catch (const NumericalError&) {
        }
    }
    return gml_by_contour(a, 0.0, ctl).value;
}

double gml_integral_rep(int k, double nu, double beta, double c, double t)
{
    require(k >= 1, "gml_integral_rep requires k >= 1");
    require(nu > 0.0 && nu < 1.0, "gml_integral_rep requires nu in (0,1)");
    require(c > 0.0 && t > 0.0, "gml_integral_rep requires c > 0 and t > 0");
    // Below this the integrand is not integrable at the origin and the
    // Hankel contour keeps a small-circle contribution.
    require(beta < nu * k + 1.0, "gml_integral_rep requires beta < nu k + 1");
    const double eps_t = c * std::pow(t, nu);
    const cplx shift = eps_t * std::polar(1.0, kPi * nu);
    const double p = nu * k - beta;
    auto f = [&](double z) {
        if (!(z > 0.0)) return 0.0;
        double lz = std::log(z);
        cplx lw = p * lz - static_cast<double>(k) * std::log(std::exp(nu * lz) + shift) + cplx(0.0, kPi * beta) - z;
        double v = std::exp(lw.real()) * std::sin(lw.imag());
        return std::isfinite(v) ? v : 0.0;
    };
    thread_local boost::math::quadrature::exp_sinh<double> integrator(12);
    double err = 0.0, l1 = 0.0;
    double I = integrator.integrate(f, 1e-12, &err, &l1);
    if (!std::isfinite(I) || err > 1e-9 * std::max(1.0, l1))
        throw QuadratureError("gml_integral_rep: quadrature did not converge");
    return I / kPi;
}

double gml_tail(int k, double nu, double beta, double c, double t)
{
    return rgamma(beta - nu * k) / (std::pow(c, k) * std::pow(t, nu * k));
}

// ---- Wright ----------------------------------------------------------------

double wright(double alpha, double beta, double x, const SeriesControl& ctl)
{
    require(alpha > -1.0, "wright requires alpha > -1");
    ctl.validate();
    if (x == 0.0) return rgamma(beta);
    const double logx = std::log(std::fabs(x));
    const bool neg = x < 0.0;
    auto next = [&](int j) {
        double arg = alpha * j + beta;
        if (is_nonpositive_integer(arg)) return Term{0.0, 0};
        int sg = 1;
        double lg = log_gamma(arg, &sg);
        return Term{j * logx - log_gamma(j + 1.0) - lg, sg * ((neg && (j & 1)) ? -1 : 1)};
    };
    SummationMode mode = (alpha < 0.0 && neg) ? SummationMode::compensated : ctl.summation_mode;
    double bound = std::max(1.0, std::fabs(rgamma(beta)));
    double abort = neg ? std::log(bound * 10.0 * ctl.rel_tol / (4.0 * kEps)) : kLogMax;
    return run_series(next, 0.0, abort, ctl, mode, "wright series").value;
}

// ---- Kummer 1F1 ------------------------------------------------------------

namespace {

double kummer_series(double a, double c, double z, const SeriesControl& ctl)
{
    if (z == 0.0) return 1.0;
    const double logz = std::log(std::fabs(z));
    const bool neg = z < 0.0;
    double L = 0.0;  // log|(a)_j z^j / ((c)_j j!)|
    int sg = 1;
    bool terminated = false;
    auto next = [&](int j) {
        if (terminated) return Term{0.0, 0};
        Term tm{L, sg * ((neg && (j & 1)) ? -1 : 1)};
        if (a + j == 0.0) {
            terminated = true;
        } else {
            L += std::log(std::fabs(a + j)) - std::log(std::fabs(c + j)) - std::log(j + 1.0) + logz;
            if (a + j < 0.0) sg = -sg;
            if (c + j < 0.0) sg = -sg;
        }
        return tm;
    };
    if (is_nonpositive_integer(a)) {
        // Polynomial: sum the finite number of terms directly.
        Accumulator acc(SummationMode::compensated);
        int n = static_cast<int>(-a);
        for (int j = 0; j <= n; ++j) {
            Term tm = next(j);
            if (tm.sign != 0) acc.add(tm.sign * std::exp(tm.logmag));
        }
        if (acc.rounding_error() > std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(acc.sum())))
            throw CancellationError("kummer_1f1: cancellation in polynomial case");
        return acc.sum();
    }
    double abort = neg ? std::log(10.0 * ctl.rel_tol / (4.0 * kEps)) : kLogMax;
    return run_series(next, 0.0, abort, ctl, ctl.summation_mode, "kummer series").value;
}

} // namespace

double kummer_1f1(double a, double c, double z, const SeriesControl& ctl)
{
    require(!is_nonpositive_integer(c), "kummer_1f1 requires c not a non-positive integer");
    ctl.validate();
    if (z >= 0.0) return kummer_series(a, c, z, ctl);
    try {
        return kummer_series(a, c, z, ctl);
    } catch (const NumericalError&) {
    }
    try {
        return std::exp(z) * kummer_series(c - a, c, -z, ctl);
    } catch (const NumericalError&) {
    }
    if (a > 0.0) return gamma_fn(c) * gml_scaled({1.0, c, a, z}, 0.0, ctl).value;
    throw CancellationError("kummer_1f1: no stable evaluation route for this argument");
}

} // namespace dofpp

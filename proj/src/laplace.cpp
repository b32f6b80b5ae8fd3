#include "dofpp/laplace.hpp"

#include "dofpp/error.hpp"
#include "dofpp/parallel.hpp"
#include "dofpp/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace dofpp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = 3.14159265358979323846;

// Weideman-Trefethen cotangent contour parameters.
constexpr double kC0 = -0.6122;
constexpr double kC1 = 0.5017;
constexpr double kC2 = 0.6407;
constexpr double kC3 = 0.2645;

int even_at_least(int n, int lo)
{
    n = std::max(n, lo);
    return n + (n & 1);
}

InversionResult gaver_stehfest(const LaplaceSpec& spec, double t, int n)
{
    const int half = n / 2;
    const long double ln2 = 0.693147180559945309417232121458176568L;
    auto fact = [](int m) {
        long double r = 1.0L;
        for (int i = 2; i <= m; ++i) r *= i;
        return r;
    };
    long double sum = 0.0L, scale = 0.0L;
    for (int k = 1; k <= n; ++k) {
        long double v = 0.0L;
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
            v += std::pow(static_cast<long double>(j), half) * fact(2 * j)
                 / (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
        }
        if ((k + half) & 1) v = -v;
        double eta = static_cast<double>(k * ln2 / t);
        double F;
        if (spec.log_transform)
            F = std::exp(spec.log_transform(cplx(eta, 0.0)).real());
        else
            F = spec.transform(cplx(eta, 0.0)).real();
        long double term = v * static_cast<long double>(F);
        sum += term;
        scale = std::max(scale, std::fabs(term));
    }
    return {static_cast<double>(sum * ln2 / t), 0.0, static_cast<double>(scale * ln2 / t)};
}

} // namespace

void LaplaceSpec::validate() const
{
    require(static_cast<bool>(transform) || static_cast<bool>(log_transform),
            "LaplaceSpec requires a transform");
    if (inversion_method == InversionMethod::talbot)
        require(nodes >= 8, "LaplaceSpec requires nodes >= 8 for talbot");
    else
        require(nodes >= 10 && nodes % 2 == 0, "LaplaceSpec requires even nodes >= 10 for gaver_stehfest");
    require(t_min > 0.0, "LaplaceSpec requires t_min > 0");
}

InversionResult talbot_fixed(const Transform& log_f, double t, int nodes)
{
    const int n = even_at_least(nodes, 2);
    const double mu = n / t;
    double sum = 0.0, scale = 0.0;
    // Conjugate symmetry: only theta in (0, pi) is evaluated.
    for (int k = n / 2; k < n; ++k) {
        double th = -kPi + (k + 0.5) * (2.0 * kPi / n);
        double s = std::sin(kC2 * th), c = std::cos(kC2 * th);
        double cot = c / s;
        cplx z = mu * cplx(kC0 + kC1 * th * cot, kC3 * th);
        cplx dz = mu * cplx(kC1 * cot - kC1 * kC2 * th / (s * s), kC3);
        cplx w = std::exp(z * t + log_f(z)) * dz;
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
            throw ConvergenceError("talbot: non-finite transform value on the contour");
        sum += w.imag();
        scale = std::max(scale, std::abs(w));
    }
    return {2.0 * sum / n, 0.0, 2.0 * scale / n};
}

InversionResult talbot_adaptive(const Transform& log_f, double t, int start_nodes, int max_nodes,
                                double rel_tol, double abs_tol)
{
    int n = even_at_least(start_nodes, 8);
    InversionResult prev = talbot_fixed(log_f, t, n);
    while (true) {
        int n2 = even_at_least(n + std::max(8, n / 4), 8);
        if (n2 > max_nodes) break;
        InversionResult cur = talbot_fixed(log_f, t, n2);
        double diff = std::fabs(cur.value - prev.value);
        double tol = std::max({rel_tol * std::fabs(cur.value), abs_tol, 64.0 * kEps * cur.scale});
        if (diff <= tol) {
            cur.error = std::max(diff, kEps * cur.scale * std::sqrt(static_cast<double>(n2)));
            return cur;
        }
        prev = cur;
        n = n2;
    }
    throw ConvergenceError("talbot: node count limit reached before convergence");
}

InversionResult invert_with_estimate(const LaplaceSpec& spec, double t)
{
    spec.validate();
    require(t >= spec.t_min, "invert requires t >= t_min");
    if (spec.inversion_method == InversionMethod::gaver_stehfest) {
        InversionResult a = gaver_stehfest(spec, t, spec.nodes);
        InversionResult b = gaver_stehfest(spec, t, spec.nodes - 2);
        a.error = std::fabs(a.value - b.value);
        return a;
    }
    Transform logF = spec.log_transform;
    if (!logF) {
        Transform F = spec.transform;
        logF = [F](cplx s) { return std::log(F(s)); };
    }
    InversionResult a = talbot_fixed(logF, t, spec.nodes);
    InversionResult b = talbot_fixed(logF, t, even_at_least(spec.nodes - spec.nodes / 4, 6));
    a.error = std::fabs(a.value - b.value);
    return a;
}

double invert(const LaplaceSpec& spec, double t)
{
    InversionResult r = invert_with_estimate(spec, t);
    double floor = (spec.inversion_method == InversionMethod::talbot ? 1e4 : 1e8) * kEps * r.scale;
    if (!std::isfinite(r.value) || r.error > std::max(spec.divergence_tol * std::fabs(r.value), floor))
        throw ConvergenceError("invert: method divergence (node-count results disagree)");
    return r.value;
}

double forward(const RealFunction& f, double eta, const QuadSettings& quad)
{
    require(eta > 0.0, "forward requires eta > 0");
    const double T = 1.0 / eta;
    auto g = [&](double t) {
        const double w = std::exp(-eta * t);
        return w == 0.0 ? 0.0 : w * f(t);
    };
    boost::math::quadrature::tanh_sinh<double> head(quad.max_levels);
    boost::math::quadrature::exp_sinh<double> tail(quad.max_levels);
    double e1 = 0.0, l1 = 0.0, e2 = 0.0, l2 = 0.0;
    double I1 = head.integrate(g, 0.0, T, quad.rel_tol, &e1, &l1);
    double I2 = tail.integrate(g, T, std::numeric_limits<double>::infinity(), quad.rel_tol, &e2, &l2);
    double I = I1 + I2;
    double tol = std::max(quad.abs_tol, 100.0 * quad.rel_tol * (l1 + l2));
    if (!std::isfinite(I) || e1 + e2 > tol)
        throw ConvergenceError("forward: quadrature or tail did not converge");
    return I;
}

SampledFunction sample_uniform(const RealFunction& f, double t_end, int intervals, bool parallel)
{
    require(intervals >= 2 && t_end > 0.0, "sample_uniform requires >= 2 intervals and t_end > 0");
    std::vector<double> ts(intervals + 1);
    const double h = t_end / intervals;
    for (int i = 0; i <= intervals; ++i) ts[i] = i * h;
    ts.back() = t_end;
    SampledFunction s;
    s.t_end = t_end;
    s.values = evaluate_grid(ts, f, parallel ? Exec::parallel : Exec::serial);
    return s;
}

namespace {

// Product-trapezoid weights a_{j,m} for the fractional integral at t_m.
double rl_at(const std::vector<double>& v, int m, double h, double alpha)
{
    if (m == 0) return 0.0;
    const double a1 = alpha + 1.0;
    double acc = (std::pow(m - 1.0, a1) - (m - alpha - 1.0) * std::pow(static_cast<double>(m), alpha)) * v[0];
    for (int j = 1; j < m; ++j) {
        double d = m - j;
        acc += (std::pow(d + 1.0, a1) - 2.0 * std::pow(d, a1) + std::pow(d - 1.0, a1)) * v[j];
    }
    acc += v[m];
    return std::pow(h, alpha) * rgamma(alpha + 2.0) * acc;
}

double l1_at(const std::vector<double>& v, int m, double h, double nu)
{
    if (m == 0) return 0.0;
    const double e = 1.0 - nu;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
        double k = m - 1 - j;
        acc += (std::pow(k + 1.0, e) - std::pow(k, e)) * (v[j + 1] - v[j]);
    }
    return std::pow(h, -nu) * rgamma(2.0 - nu) * acc;
}

std::vector<double> halved(const std::vector<double>& v)
{
    std::vector<double> out;
    out.reserve(v.size() / 2 + 1);
    for (std::size_t i = 0; i < v.size(); i += 2) out.push_back(v[i]);
    return out;
}

void check_sampled(const SampledFunction& f, double order)
{
    require(f.values.size() >= 3, "sampled function needs at least 2 intervals");
    require(f.t_end > 0.0, "sampled function needs t_end > 0");
    require(order > 0.0 && order < 1.0, "fractional order must lie in (0,1)");
}

} // namespace

double rl_fractional_integral(const SampledFunction& f, double alpha, double tol)
{
    check_sampled(f, alpha);
    const int n = static_cast<int>(f.values.size()) - 1;
    const double h = f.step();
    double fine = rl_at(f.values, n, h, alpha);
    if (n % 2 == 0 && n >= 4) {
        double coarse = rl_at(halved(f.values), n / 2, 2.0 * h, alpha);
        if (std::fabs(fine - coarse) > tol)
            throw ConvergenceError("rl_fractional_integral: grid too coarse for tolerance");
    }
    return fine;
}

std::vector<double> rl_fractional_integral_grid(const SampledFunction& f, double alpha)
{
    check_sampled(f, alpha);
    const int n = static_cast<int>(f.values.size()) - 1;
    std::vector<double> out(n + 1);
    for (int m = 0; m <= n; ++m) out[m] = rl_at(f.values, m, f.step(), alpha);
    return out;
}

double caputo_derivative(const SampledFunction& f, double nu, double tol)
{
    check_sampled(f, nu);
    const int n = static_cast<int>(f.values.size()) - 1;
    const double h = f.step();
    double fine = l1_at(f.values, n, h, nu);
    if (n % 2 == 0 && n >= 4) {
        double coarse = l1_at(halved(f.values), n / 2, 2.0 * h, nu);
        if (std::fabs(fine - coarse) > tol)
            throw ConvergenceError("caputo_derivative: grid too coarse for tolerance");
    }
    return fine;
}

std::vector<double> caputo_derivative_grid(const SampledFunction& f, double nu)
{
    check_sampled(f, nu);
    const int n = static_cast<int>(f.values.size()) - 1;
    std::vector<double> out(n + 1);
    for (int m = 0; m <= n; ++m) out[m] = l1_at(f.values, m, f.step(), nu);
    return out;
}

} // namespace dofpp

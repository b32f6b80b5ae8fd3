#include "dofpp/diffusion.hpp"

#include "detail/caputo.hpp"
#include "detail/inversion.hpp"
#include "dofpp/error.hpp"
#include "dofpp/specfun.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace dofpp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kUniformPanels = 64;
constexpr int kGeometricPanels = 36;

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

struct Panel {
    double a, b;
};

// Uniform panels on [0, top] with the first (and, for a support edge at top,
// the last) panel split geometrically.
std::vector<Panel> panels(double top, bool edge_at_top)
{
    const double lo = top / kUniformPanels;
    std::vector<Panel> out;
    double b = lo * std::ldexp(1.0, -kGeometricPanels);
    for (int i = 0; i < kGeometricPanels; ++i, b *= 2.0) out.push_back({b, 2.0 * b});
    const int last = edge_at_top ? kUniformPanels - 1 : kUniformPanels;
    for (int i = 1; i < last; ++i) out.push_back({lo * i, lo * (i + 1)});
    if (edge_at_top) {
        double w = 0.5 * lo;
        double a = top - lo;
        for (int i = 0; i < kGeometricPanels; ++i, w *= 0.5) {
            out.push_back({a, a + w});
            a += w;
        }
    }
    return out;
}

} // namespace

void require_unit_rate(const DistributedOrder& p)
{
    p.validate();
    require(p.lambda == 1.0, "diffusion requires lambda = 1");
}

void DiffusionPoint::validate() const
{
    require_unit_rate(p);
    require(t > 0.0, "DiffusionPoint requires t > 0");
    require(std::isfinite(x), "DiffusionPoint requires finite x");
}

DiffusionDensity::DiffusionDensity(const DistributedOrder& p0, double t, Exec exec) : t_(t)
{
    require_unit_rate(p0);
    require(t > 0.0, "DiffusionDensity requires t > 0");
    const DistributedOrder p = p0.reduced();
    if (p.n1 == 0.0 && p.nu2 == 1.0) {
        heat_kernel_ = true;
        return;
    }
    const QRange range = q_range(p, t);
    const double y_top = range.y_top;
    const auto& xk = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    for (const Panel& pn : panels(std::sqrt(y_top), p.nu2 == 1.0 && y_top == t / p.n2)) {
        const double c = 0.5 * (pn.a + pn.b), r = 0.5 * (pn.b - pn.a);
        for (std::size_t i = 0; i < xk.size(); ++i) {
            // Kronrod nodes with even index are the Gauss nodes.
            const double gw = (i % 2 == 0) ? wg[i / 2] : 0.0;
            for (int sign : {1, -1}) {
                if (i == 0 && sign < 0) break;
                s_.push_back(c + sign * r * xk[i]);
                wk_.push_back(r * wk[i]);
                wg_.push_back(r * gw);
            }
        }
    }
    std::vector<double> ys(s_.size());
    for (std::size_t i = 0; i < s_.size(); ++i) ys[i] = s_[i] * s_[i];
    q_ = evaluate_grid(
        ys, [&](double y) { return q_node(p, y, t, range.y_negligible); }, exec);
}

double DiffusionDensity::sum(double x, bool gauss) const
{
    const double x2 = 0.25 * x * x;
    const std::vector<double>& w = gauss ? wg_ : wk_;
    double acc = 0.0;
    for (std::size_t i = 0; i < s_.size(); ++i) {
        if (w[i] == 0.0) continue;
        acc += w[i] * std::exp(-x2 / (s_[i] * s_[i])) * q_[i];
    }
    return acc / std::sqrt(kPi);
}

double DiffusionDensity::operator()(double x) const
{
    if (heat_kernel_) return std::exp(-x * x / (4.0 * t_)) / std::sqrt(4.0 * kPi * t_);
    return sum(std::fabs(x), false);
}

double DiffusionDensity::error(double x) const
{
    if (heat_kernel_) return 0.0;
    return std::fabs(sum(std::fabs(x), false) - sum(std::fabs(x), true));
}

std::vector<double> DiffusionDensity::on_grid(const std::vector<double>& xs, Exec exec) const
{
    return evaluate_grid(xs, [this](double x) { return (*this)(x); }, exec);
}

double density(const DiffusionPoint& pt, Exec exec)
{
    pt.validate();
    DiffusionDensity v(pt.p, pt.t, exec);
    const double val = v(pt.x);
    if (!std::isfinite(val) || v.error(pt.x) > 1e-6 * std::max(val, 1e-6))
        throw QuadratureError("diffusion density: subordination quadrature did not converge");
    return val;
}

double density_invert(const DistributedOrder& p0, double x, double t)
{
    require_unit_rate(p0);
    require(t > 0.0, "density_invert requires t > 0");
    const DistributedOrder p = p0.reduced();
    const double ax = std::fabs(x);
    Transform logF = [p, ax](cplx eta) {
        cplx r = std::sqrt(p.exponent(eta));
        return std::log(r) - ax * r - std::log(2.0 * eta);
    };
    return detail::invert_checked(logF, t, "diffusion density inversion");
}

double fourier_transform(double theta, double t, const DistributedOrder& p, const SeriesControl& ctl)
{
    require_unit_rate(p);
    require(t > 0.0, "fourier_transform requires t > 0");
    if (theta == 0.0) return 1.0;
    return relaxation(p, theta * theta, t, ctl);
}

double moment(const DistributedOrder& p0, int k, double t, const SeriesControl& ctl0)
{
    const SeriesControl ctl = relative_only(ctl0);
    require_unit_rate(p0);
    require(k >= 0, "moment requires k >= 0");
    require(t > 0.0, "moment requires t > 0");
    if (k == 0) return 1.0;
    if (k % 2 == 1) return 0.0;
    const DistributedOrder p = p0.reduced();
    const int h = k / 2;
    const double d = p.delta();
    const double a = p.n1 * std::pow(t, d) / p.n2;
    const double lt = std::log(t), ln2 = std::log(p.n2), lf = log_gamma(k + 1.0);
    // (t^(nu2 h) / n2^h) (2h)! E^{h+1}_{d, nu2 h + 1}(-a)
    double value = gml_scaled({d, p.nu2 * h + 1.0, h + 1.0, -a}, h * (p.nu2 * lt - ln2) + lf, ctl).value;
    if (p.n1 > 0.0)
        // (n1 t^(nu2 h + d) / n2^(h+1)) (2h)! E^{h+1}_{d, nu2 h + d + 1}(-a)
        value += gml_scaled({d, p.nu2 * h + d + 1.0, h + 1.0, -a},
                            std::log(p.n1) + (p.nu2 * h + d) * lt - (h + 1.0) * ln2 + lf, ctl)
                     .value;
    return value;
}

double second_moment_closed_form(const DistributedOrder& p0, double t, const SeriesControl& ctl)
{
    require_unit_rate(p0);
    require(t > 0.0, "second_moment_closed_form requires t > 0");
    const DistributedOrder p = p0.reduced();
    const double d = p.delta();
    return 2.0 * std::pow(t, p.nu2) / p.n2 * mittag_leffler(d, p.nu2 + 1.0, -p.n1 * std::pow(t, d) / p.n2, ctl);
}

RegimeReport regime_report(const DistributedOrder& p)
{
    p.validate();
    // Single-order limits carry one order at both ends.
    const double small_nu = p.n2 > 0.0 ? p.nu2 : p.nu1;
    const double large_nu = p.n1 > 0.0 ? p.nu1 : p.nu2;
    const double small_n = p.n2 > 0.0 ? p.n2 : p.n1;
    const double large_n = p.n1 > 0.0 ? p.n1 : p.n2;
    RegimeReport r;
    r.diffusion_small_exponent = small_nu;
    r.diffusion_large_exponent = large_nu;
    r.squared_small_exponent = 2.0 * small_nu;
    r.squared_large_exponent = 2.0 * large_nu;
    r.diffusion_small_prefactor = 2.0 / (small_n * gamma_fn(1.0 + small_nu));
    r.diffusion_large_prefactor = 2.0 / (large_n * gamma_fn(1.0 + large_nu));
    r.squared_small_prefactor = 2.0 / (small_n * small_n * gamma_fn(1.0 + 2.0 * small_nu));
    r.squared_large_prefactor = 2.0 / (large_n * large_n * gamma_fn(1.0 + 2.0 * large_nu));
    const double lo = std::min(small_nu, large_nu), hi = std::max(small_nu, large_nu);
    if (hi < 0.5)
        r.label = "retardation-emphasized";
    else if (lo > 0.5)
        r.label = "acceleration";
    else
        r.label = "mixed";
    return r;
}

RegimeSlopes regime_slopes(const DistributedOrder& p0, double t_small, double t_large, double h)
{
    require(t_small > 0.0 && t_large > 0.0 && h > 0.0, "regime_slopes requires positive arguments");
    DistributedOrder p = p0;
    p.lambda = 1.0;
    auto slope = [h](auto f, double t) {
        return (std::log(f(t * std::exp(h))) - std::log(f(t * std::exp(-h)))) / (2.0 * h);
    };
    auto b2 = [&p](double t) { return moment(p, 2, t); };
    auto t2 = [&p](double t) { return q_moment(p, 2, t); };
    return {slope(b2, t_small), slope(b2, t_large), slope(t2, t_small), slope(t2, t_large)};
}

double diffusion_equation_residual(const DistributedOrder& p0, double theta, double t, int intervals)
{
    require_unit_rate(p0);
    require(t > 0.0, "diffusion_equation_residual requires t > 0");
    require(intervals >= 4, "diffusion_equation_residual requires at least 4 intervals");
    const DistributedOrder p = p0.reduced();
    SampledFunction V = sample_uniform(
        [&](double s) { return s == 0.0 ? 1.0 : fourier_transform(theta, s, p); }, t, intervals, true);
    const double h = V.step();
    double lhs = theta * theta * V.values.back();
    if (p.n1 > 0.0) lhs += p.n1 * detail::caputo_last(V.values, h, p.nu1);
    lhs += p.n2 * detail::caputo_last(V.values, h, p.nu2);
    return std::fabs(lhs);
}

} // namespace dofpp

#include "dofpp/stable.hpp"

#include "detail/series_engine.hpp"
#include "dofpp/error.hpp"
#include "dofpp/specfun.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>

namespace dofpp {

using detail::Term;
using detail::run_series;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// log A(phi) for the Zolotarev/Kanter representation of the unit law.
double log_zolotarev_a(double alpha, double phi)
{
    const double r = 1.0 / (1.0 - alpha);
    return alpha * r * std::log(std::sin(alpha * phi)) + std::log(std::sin((1.0 - alpha) * phi))
           - r * std::log(std::sin(phi));
}

// log of the unit density via the Zolotarev integral; -inf when it underflows.
double log_unit_pdf_integral(double alpha, double x)
{
    const double r = 1.0 / (1.0 - alpha);
    const double logK = -alpha * r * std::log(x);
    const double K = std::exp(logK);
    const double logA0 = alpha * r * std::log(alpha) + std::log(1.0 - alpha);
    const double KA0 = std::exp(logK + logA0);
    // The integral is at most pi A0 once K A0 > 1, so the density is bounded
    // by (alpha r / pi) x^-r pi A0 exp(-K A0).
    const double log_bound = std::log(alpha * r) - r * std::log(x) + logA0 - KA0;
    if (KA0 > 1.0 && log_bound < -800.0) return -std::numeric_limits<double>::infinity();
    auto g = [&](double phi) {
        if (phi <= 0.0 || phi >= kPi) return 0.0;
        double la = log_zolotarev_a(alpha, phi);
        if (!std::isfinite(la)) return 0.0;
        double a = std::exp(la);
        double e = std::exp(la - K * a + KA0);
        return std::isfinite(e) ? e : 0.0;
    };
    // For large K the integrand is a narrow peak at phi = 0 of width ~ K^-1/2;
    // integrate over geometrically growing panels so the peak is resolved.
    thread_local boost::math::quadrature::tanh_sinh<double> ts(15);
    double I = 0.0, err = 0.0, l1 = 0.0;
    double lo = 0.0, hi = std::min(kPi, 1.0 / std::sqrt(std::max(K, 1.0)));
    while (lo < kPi) {
        double e = 0.0, l = 0.0;
        I += ts.integrate(g, lo, hi, 1e-13, &e, &l);
        err += e;
        l1 += l;
        lo = hi;
        hi = std::min(kPi, 4.0 * hi);
    }
    if (!std::isfinite(I) || err > 1e-9 * std::max(l1, 1e-300))
        throw QuadratureError("stable pdf: Zolotarev integral did not converge");
    if (I <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(alpha * r / kPi) - r * std::log(x) + std::log(I) - KA0;
}

} // namespace

StableParams StableParams::from_zeta(double alpha, double zeta, double mu)
{
    require(alpha > 0.0 && alpha < 1.0, "StableParams requires alpha in (0,1)");
    require(zeta > 0.0, "StableParams requires zeta > 0");
    StableParams p;
    p.alpha = alpha;
    p.mu = mu;
    p.sigma = std::pow(zeta * std::cos(kPi * alpha / 2.0), 1.0 / alpha);
    return p;
}

StableParams StableParams::degenerate(double at)
{
    StableParams p;
    p.mu = at;
    p.sigma = 0.0;
    p.point_mass = true;
    return p;
}

double StableParams::zeta() const
{
    if (point_mass) return 0.0;
    return std::pow(sigma, alpha) / std::cos(kPi * alpha / 2.0);
}

void StableParams::validate() const
{
    require(mu >= 0.0, "StableParams requires mu >= 0");
    require(beta_skew == 1.0, "StableParams supports only beta_skew = 1");
    if (point_mass) return;
    require(alpha > 0.0 && alpha < 1.0, "StableParams requires alpha in (0,1)");
    require(sigma > 0.0, "StableParams requires sigma > 0");
}

FellerParams feller_params(const StableParams& p)
{
    p.validate();
    require(!p.point_mass, "feller_params: point mass has no Feller form");
    return {p.alpha, p.zeta()};
}

double unit_stable_pdf_feller(double alpha, double x, const SeriesControl& ctl)
{
    require(alpha > 0.0 && alpha < 1.0, "unit_stable_pdf requires alpha in (0,1)");
    ctl.validate();
    if (x <= 0.0) return 0.0;
    const double lx = std::log(x);
    // (1/pi) sum_{k>=1} (-1)^(k+1) Gamma(alpha k + 1)/k! sin(pi alpha k) x^(-alpha k - 1)
    auto next = [&](int j) {
        int k = j + 1;
        double s = std::sin(kPi * alpha * k);
        if (std::fabs(s) < 1e-15) return Term{0.0, 0};
        double lm = log_gamma(alpha * k + 1.0) - log_gamma(k + 1.0) + std::log(std::fabs(s))
                    - (alpha * k + 1.0) * lx - std::log(kPi);
        int sg = (s > 0.0 ? 1 : -1) * ((k & 1) ? 1 : -1);
        return Term{lm, sg};
    };
    // Leading term sets the scale of the answer.
    double lead = log_gamma(alpha + 1.0) + std::log(std::sin(kPi * alpha)) - (alpha + 1.0) * lx - std::log(kPi);
    double abort = lead + std::log(10.0 * ctl.rel_tol / (4.0 * kEps));
    double v = run_series(next, lead, abort, ctl, ctl.summation_mode, "stable Feller series").value;
    if (v < 0.0) throw CancellationError("stable Feller series: negative density");
    return v;
}

double unit_stable_pdf_integral(double alpha, double x)
{
    require(alpha > 0.0 && alpha < 1.0, "unit_stable_pdf requires alpha in (0,1)");
    if (x <= 0.0) return 0.0;
    return std::exp(log_unit_pdf_integral(alpha, x));
}

double unit_stable_pdf(double alpha, double x, const SeriesControl& ctl)
{
    require(alpha > 0.0 && alpha < 1.0, "unit_stable_pdf requires alpha in (0,1)");
    if (x <= 0.0) return 0.0;
    // The Feller series converges everywhere but cancels badly once x^-alpha
    // grows; below x = 1 go straight to the integral.
    if (x >= 1.0) {
        try {
            return unit_stable_pdf_feller(alpha, x, ctl);
        } catch (const NumericalError&) {
        }
    }
    return unit_stable_pdf_integral(alpha, x);
}

double stable_pdf(const StableParams& p, double x, const SeriesControl& ctl)
{
    p.validate();
    require(!p.point_mass, "stable_pdf: point mass has no density");
    if (x <= p.mu) return 0.0;
    const double s = std::pow(p.zeta(), 1.0 / p.alpha);
    return unit_stable_pdf(p.alpha, (x - p.mu) / s, ctl) / s;
}

double unit_stable_draw(double alpha, Rng& rng)
{
    double phi = kPi * uniform_open(rng);
    double w = exponential1(rng);
    return std::exp((1.0 - alpha) / alpha * (log_zolotarev_a(alpha, phi) - std::log(w)));
}

std::vector<double> stable_sample(const StableParams& p, const SamplePlan& plan, Exec exec)
{
    p.validate();
    plan.validate();
    if (p.point_mass) return std::vector<double>(plan.count, p.mu);
    const double s = std::pow(p.zeta(), 1.0 / p.alpha);
    const double a = p.alpha, mu = p.mu;
    return generate_blocks<double>(plan.count, plan.seed,
                                   [=](Rng& rng) { return mu + s * unit_stable_draw(a, rng); }, exec);
}

double stable_convolve(const StableParams& p1, const StableParams& p2, double w, int quad_n)
{
    p1.validate();
    p2.validate();
    require(p1.mu == 0.0 && p2.mu == 0.0, "stable_convolve requires zero shifts");
    require(w > 0.0, "stable_convolve requires w > 0");
    require(quad_n >= 1, "stable_convolve requires quad_n >= 1");
    if (p1.point_mass && p2.point_mass) throw InvalidArgument("stable_convolve: both laws are point masses");
    if (p2.point_mass) return stable_pdf(p1, w);
    if (p1.point_mass) return stable_pdf(p2, w);
    auto g = [&](double x) {
        if (x <= 0.0 || x >= w) return 0.0;
        return stable_pdf(p1, w - x) * stable_pdf(p2, x);
    };
    boost::math::quadrature::tanh_sinh<double> ts(quad_n);
    double err = 0.0, l1 = 0.0;
    double I = ts.integrate(g, 0.0, w, 1e-10, &err, &l1);
    if (!std::isfinite(I) || err > 1e-7 * std::max(l1, 1e-300))
        throw QuadratureError("stable_convolve: quadrature did not converge");
    return std::max(I, 0.0);
}

double m_wright(double alpha, double z, const SeriesControl& ctl)
{
    require(alpha > 0.0 && alpha < 1.0, "m_wright requires alpha in (0,1)");
    require(z >= 0.0, "m_wright requires z >= 0");
    if (z == 0.0) return rgamma(1.0 - alpha);
    try {
        double v = wright(-alpha, 1.0 - alpha, -z, ctl);
        if (v >= 0.0) return v;
    } catch (const NumericalError&) {
    }
    double x = std::pow(z, -1.0 / alpha);
    double lp = log_unit_pdf_integral(alpha, x);
    return std::exp((-1.0 - 1.0 / alpha) * std::log(z) + lp - std::log(alpha));
}

double folded_diffusion_density(double alpha, double c, double y, double t, const SeriesControl& ctl)
{
    require(alpha > 0.0 && alpha < 1.0, "folded_diffusion_density requires alpha in (0,1)");
    require(c > 0.0 && t > 0.0, "folded_diffusion_density requires c > 0 and t > 0");
    if (y < 0.0) return 0.0;
    const double scale = c * std::pow(t, alpha);
    return m_wright(alpha, y / scale, ctl) / scale;
}

} // namespace dofpp

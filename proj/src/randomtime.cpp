#include "dofpp/randomtime.hpp"

#include "detail/inversion.hpp"

#include "dofpp/config.hpp"
#include "dofpp/error.hpp"
#include "dofpp/specfun.hpp"
#include "dofpp/stable.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace dofpp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 1/Gamma(x) as (log magnitude, sign); sign 0 at the poles.
void log_rgamma(double x, double& logmag, int& sign)
{
    if (x <= 0.0 && x == std::floor(x)) {
        sign = 0;
        logmag = 0.0;
        return;
    }
    int sg = 1;
    logmag = -log_gamma(x, &sg);
    sign = sg;
}

// Integral over [0, t] of f(s, t - s). Each half is integrated in the distance
// to its own endpoint, with panels growing geometrically from the scales
// w_left (near s = 0) and w_right (near s = t), so narrow peaks at either end
// are resolved and t - s keeps full relative precision.
double integrate_panels(const std::function<double(double, double)>& f, double t, double w_right, double w_left)
{
    thread_local boost::math::quadrature::tanh_sinh<double> ts(12);
    double I = 0.0, err = 0.0, l1 = 0.0;
    const double half = t / 2.0;
    for (int side = 0; side < 2; ++side) {
        double w = side == 0 ? w_left : w_right;
        std::vector<double> cuts{0.0, half};
        for (double c = std::min(w, half); c > 1e-10 * t; c *= 0.25) cuts.push_back(c);
        for (double c = 4.0 * w; c < half; c *= 4.0) cuts.push_back(c);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        auto g = [&](double u) {
            if (u <= 0.0) return 0.0;
            return side == 0 ? f(u, t - u) : f(t - u, u);
        };
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double e = 0.0, l = 0.0;
            I += ts.integrate(g, cuts[i], cuts[i + 1], 1e-11, &e, &l);
            err += e;
            l1 += l;
        }
    }
    if (!std::isfinite(I) || err > 1e-8 * std::max(l1, 1e-300))
        throw QuadratureError("q_integral: quadrature did not converge");
    return I;
}

} // namespace

DistributedOrder DistributedOrder::make(double nu1, double nu2, double n1, double lambda)
{
    DistributedOrder p;
    p.nu1 = nu1;
    p.nu2 = nu2;
    p.n1 = n1;
    p.n2 = 1.0 - n1;
    p.lambda = lambda;
    if (nu1 == nu2 && nu2 > 0.0) {
        p.nu1 = nu2 / 2.0;
        p.n1 = 0.0;
        p.n2 = 1.0;
    }
    p.validate();
    return p;
}

void DistributedOrder::validate() const
{
    require(nu1 > 0.0, "DistributedOrder requires nu1 > 0");
    require(nu1 < nu2, "DistributedOrder requires nu1 < nu2");
    require(nu2 <= 1.0, "DistributedOrder requires nu2 <= 1");
    require(n1 >= 0.0 && n2 >= 0.0, "DistributedOrder requires n1, n2 >= 0");
    require(std::fabs(n1 + n2 - 1.0) <= 4.0 * kEps, "DistributedOrder requires n1 + n2 = 1");
    require(lambda > 0.0 && std::isfinite(lambda), "DistributedOrder requires lambda > 0");
}

DistributedOrder DistributedOrder::reduced() const
{
    validate();
    if (n2 > 0.0) return *this;
    DistributedOrder q = *this;
    q.nu2 = nu1;
    q.nu1 = nu1 / 2.0;
    q.n1 = 0.0;
    q.n2 = 1.0;
    return q;
}

double DistributedOrder::exponent(double eta) const
{
    return n1 * std::pow(eta, nu1) + n2 * std::pow(eta, nu2);
}

cplx DistributedOrder::exponent(cplx eta) const
{
    return n1 * std::pow(eta, nu1) + n2 * std::pow(eta, nu2);
}

// ---- density ---------------------------------------------------------------

double q_laplace(const DistributedOrder& p, double y, double eta)
{
    p.validate();
    require(y >= 0.0, "q_laplace requires y >= 0");
    require(eta > 0.0, "q_laplace requires eta > 0");
    const double S = p.exponent(eta);
    return S / (p.lambda * eta) * std::exp(-S * y / p.lambda);
}

double q_series(const DistributedOrder& p0, double y, double t, const SeriesControl& ctl)
{
    const DistributedOrder p = p0.reduced();
    require(y >= 0.0 && t > 0.0, "q_series requires y >= 0 and t > 0");
    ctl.validate();
    // q = sum_{k,r} (-A1)^k (-A2)^r / (k! r!) sum_j C_j / Gamma(1 - nu_j - nu1 k - nu2 r)
    // with A_j = n_j y / (lambda t^nu_j) and C_j = n_j / (lambda t^nu_j).
    const double lt1 = std::log(t) * p.nu1, lt2 = std::log(t) * p.nu2;
    const double ll = std::log(p.lambda);
    const bool have1 = p.n1 > 0.0;
    const double logC1 = have1 ? std::log(p.n1) - ll - lt1 : 0.0;
    const double logC2 = std::log(p.n2) - ll - lt2;
    const double logA1 = (have1 && y > 0.0) ? logC1 + std::log(y) : -std::numeric_limits<double>::infinity();
    const double logA2 = y > 0.0 ? logC2 + std::log(y) : -std::numeric_limits<double>::infinity();

    Accumulator acc(ctl.summation_mode);
    double max_log = -std::numeric_limits<double>::infinity();
    int quiet = 0;
    double prev_diag = std::numeric_limits<double>::infinity();
    const int max_degree = std::min(ctl.max_terms, 4000);
    for (int m = 0; m < max_degree; ++m) {
        double diag = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= m; ++k) {
            int r = m - k;
            if (k > 0 && !std::isfinite(logA1)) break;
            if (r > 0 && !std::isfinite(logA2)) continue;
            double base = (k > 0 ? k * logA1 : 0.0) + (r > 0 ? r * logA2 : 0.0) - log_gamma(k + 1.0)
                          - log_gamma(r + 1.0);
            int sgn = ((k + r) & 1) ? -1 : 1;
            for (int j = 0; j < 2; ++j) {
                if (j == 0 && !have1) continue;
                double nu = j == 0 ? p.nu1 : p.nu2;
                double lg;
                int sg;
                log_rgamma(1.0 - nu - p.nu1 * k - p.nu2 * r, lg, sg);
                if (sg == 0) continue;
                double lm = base + lg + (j == 0 ? logC1 : logC2);
                if (lm > 709.0) throw OverflowError("q_series: term overflow");
                acc.add(sgn * sg * std::exp(lm));
                diag = std::max(diag, lm);
                max_log = std::max(max_log, lm);
            }
        }
        const double s = std::fabs(acc.sum());
        const double tol = std::max(ctl.abs_tol, ctl.rel_tol * s);
        if (m > 0 && max_log > std::log(s + ctl.abs_tol) + std::log(ctl.rel_tol / (16.0 * kEps)) + 2.3)
            throw CancellationError("q_series: terms too large for requested accuracy");
        if (!std::isfinite(diag) || (std::exp(diag) <= 0.1 * tol && diag < prev_diag)) {
            if (++quiet >= 2) {
                double err = acc.rounding_error() + std::exp(diag);
                double v = acc.sum();
                if (err > std::max(ctl.abs_tol, 100.0 * ctl.rel_tol * std::fabs(v)))
                    throw CancellationError("q_series: cancellation exceeds tolerance");
                if (v < 0.0) throw CancellationError("q_series: negative result");
                return v;
            }
        } else {
            quiet = 0;
        }
        prev_diag = diag;
    }
    throw ConvergenceError("q_series: no convergence within max_terms");
}

double q_invert(const DistributedOrder& p0, double y, double t)
{
    const DistributedOrder p = p0.reduced();
    require(y >= 0.0 && t > 0.0, "q_invert requires y >= 0 and t > 0");
    const double lam = p.lambda;
    Transform logF = [p, y, lam](cplx eta) {
        cplx S = p.exponent(eta);
        return std::log(S / (lam * eta)) - S * y / lam;
    };
    double v = detail::invert_checked(logF, t, "q_invert", 1e-10, 1e-14);
    return std::max(v, 0.0);
}

double q_integral(const DistributedOrder& p0, double y, double t)
{
    const DistributedOrder p = p0.reduced();
    require(y >= 0.0 && t > 0.0, "q_integral requires y >= 0 and t > 0");
    const double lam = p.lambda;
    if (p.n1 == 0.0) {
        if (p.nu2 == 1.0) throw InvalidArgument("q_integral: T(t) = lambda t is deterministic, no density");
        return folded_diffusion_density(p.nu2, lam / p.n2, y, t);
    }
    const double c1 = lam / p.n1;
    if (y == 0.0) {
        // Both stable factors collapse to point masses at 0.
        double v = folded_diffusion_density(p.nu1, c1, 0.0, t);
        if (p.nu2 < 1.0) v += folded_diffusion_density(p.nu2, lam / p.n2, 0.0, t);
        return v;
    }
    const double zeta1 = p.n1 * y / lam, zeta2 = p.n2 * y / lam;
    const StableParams law1 = StableParams::from_zeta(p.nu1, zeta1);
    const StableParams law2 = p.nu2 == 1.0 ? StableParams::degenerate(zeta2) : StableParams::from_zeta(p.nu2, zeta2);

    if (law2.point_mass) {
        // Convolution with a point mass at mu is a shift by mu.
        const double u = t - law2.mu;
        if (u <= 0.0) return 0.0;
        return folded_diffusion_density(p.nu1, c1, y, u) + (p.n2 / lam) * stable_pdf(law1, u);
    }
    const double c2 = lam / p.n2;
    auto part_a = [&](double s, double rest) {
        return stable_pdf(law2, rest) * folded_diffusion_density(p.nu1, c1, y, s);
    };
    auto part_b = [&](double s, double rest) {
        return stable_pdf(law1, rest) * folded_diffusion_density(p.nu2, c2, y, s);
    };
    const double w1 = std::pow(zeta1, 1.0 / p.nu1), w2 = std::pow(zeta2, 1.0 / p.nu2);
    // v-bar_{2 nu}(y, s) is negligible until c s^nu is comparable with y.
    const double s1 = std::pow(y / c1, 1.0 / p.nu1), s2 = std::pow(y / c2, 1.0 / p.nu2);
    double v = integrate_panels(part_a, t, w2, s1) + integrate_panels(part_b, t, w1, s2);
    return std::max(v, 0.0);
}

QValue q_density(const DistributedOrder& p0, double y, double t, QRoute route, const SeriesControl& ctl)
{
    const DistributedOrder p = p0.reduced();
    require(y >= 0.0 && t > 0.0, "q_density requires y >= 0 and t > 0");
    switch (route) {
    case QRoute::series: return {q_series(p, y, t, ctl), route};
    case QRoute::laplace_inversion: return {q_invert(p, y, t), route};
    case QRoute::integral: return {q_integral(p, y, t), route};
    case QRoute::automatic: break;
    }
    if (y / (p.lambda * std::pow(t, p.nu2)) <= tuning().q_series_max_arg) {
        try {
            return {q_series(p, y, t, ctl), QRoute::series};
        } catch (const NumericalError&) {
        }
    }
    if (p.nu2 < 1.0) {
        try {
            return {q_invert(p, y, t), QRoute::laplace_inversion};
        } catch (const NumericalError&) {
        }
    }
    return {q_integral(p, y, t), QRoute::integral};
}

double q_node(const DistributedOrder& p0, double y, double t, double y_negligible)
{
    const DistributedOrder p = p0.reduced();
    if (y > y_negligible) return 0.0;
    if (y / (p.lambda * std::pow(t, p.nu2)) <= tuning().q_series_max_arg) {
        try {
            return q_series(p, y, t);
        } catch (const NumericalError&) {
        }
    }
    if (p.nu2 < 1.0) {
        try {
            return q_invert(p, y, t);
        } catch (const NumericalError&) {
        }
        // Deep in the tail with nu2 near 1 the contour needs many more nodes
        // than the default cap; still far cheaper than the convolution.
        try {
            const double lam = p.lambda;
            Transform logF = [p, y, lam](cplx eta) {
                cplx S = p.exponent(eta);
                return std::log(S / (lam * eta)) - S * y / lam;
            };
            return std::max(detail::invert_checked(logF, t, "q_invert", 1e-10, 1e-14, 4096), 0.0);
        } catch (const NumericalError&) {
        }
    }
    return q_integral(p, y, t);
}

QRange q_range(const DistributedOrder& p0, double t)
{
    const DistributedOrder p = p0.reduced();
    // Markov: P(T > y) <= E[T^k] / y^k, so P(T > y_negligible) <= 1e-16.
    // Moments are used in log form and only when their error estimate is small.
    const double a = p.n1 * std::pow(t, p.delta()) / p.n2;
    const double lscale = std::log(p.lambda) + p.nu2 * std::log(t) - std::log(p.n2);
    double y_neg = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 256; k = k < 16 ? k + 1 : k + k / 4) {
        try {
            GmlResult g = gml_scaled({p.delta(), p.nu2 * k + 1.0, static_cast<double>(k), -a}, 0.0, relative_only({}));
            if (!(g.value > 0.0) || g.error > 1e-8 * g.value) continue;
            const double log_mk = k * lscale + log_gamma(k + 1.0) + std::log(g.value);
            y_neg = std::min(y_neg, std::exp((log_mk - std::log(1e-16)) / k));
        } catch (const NumericalError&) {
        }
    }
    require(std::isfinite(y_neg), "q_range: no moment bound available");
    QRange r;
    r.y_negligible = y_neg;
    r.y_top = y_neg;
    if (p.nu2 == 1.0) r.y_top = std::min(r.y_top, p.lambda * t / p.n2);
    return r;
}

// ---- moments ---------------------------------------------------------------

double q_moment(const DistributedOrder& p0, int k, double t, const SeriesControl& ctl)
{
    const DistributedOrder p = p0.reduced();
    require(k >= 1, "q_moment requires k >= 1");
    require(t > 0.0, "q_moment requires t > 0");
    // E T^k = k! (lambda t^nu2 / n2)^k E^k_{delta, nu2 k + 1}(-n1 t^delta / n2)
    const double lf = k * (std::log(p.lambda) + p.nu2 * std::log(t) - std::log(p.n2)) + log_gamma(k + 1.0);
    const double a = p.n1 * std::pow(t, p.delta()) / p.n2;
    return gml_scaled({p.delta(), p.nu2 * k + 1.0, static_cast<double>(k), -a}, lf, relative_only(ctl)).value;
}

// ---- relaxation ------------------------------------------------------------

double relaxation_series(const DistributedOrder& p0, double kappa, double t, const SeriesControl& ctl)
{
    const DistributedOrder p = p0.reduced();
    require(kappa >= 0.0 && t > 0.0, "relaxation requires kappa >= 0 and t > 0");
    ctl.validate();
    if (kappa == 0.0) return 1.0;
    // R = E_{nu2,1}(-b) - sum_{r>=1} (-a)^r b E^{r+1}_{nu2, delta r + nu2 + 1}(-b)
    const double b = kappa * std::pow(t, p.nu2) / p.n2;
    const double a = p.n1 * std::pow(t, p.delta()) / p.n2;
    if (b == 0.0) return 1.0;
    GmlResult lead = gml_scaled({p.nu2, 1.0, 1.0, -b}, 0.0, ctl);
    if (a == 0.0) return lead.value;
    Accumulator acc(ctl.summation_mode);
    acc.add(lead.value);
    double err = lead.error, max_abs = std::fabs(lead.value);
    const double la = std::log(a), lb = std::log(b);
    int quiet = 0;
    double prev = std::numeric_limits<double>::infinity();
    for (int r = 1; r < ctl.max_terms; ++r) {
        GmlResult g = gml_scaled({p.nu2, p.delta() * r + p.nu2 + 1.0, r + 1.0, -b}, r * la + lb, ctl);
        double term = (r & 1) ? g.value : -g.value;
        acc.add(term);
        err += g.error;
        max_abs = std::max(max_abs, std::fabs(term));
        double tol = std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(acc.sum()));
        if (std::fabs(term) <= 0.1 * tol && std::fabs(term) <= prev) {
            if (++quiet >= 2) {
                double total = err + acc.rounding_error();
                if (total > std::max(ctl.abs_tol, 1e3 * ctl.rel_tol * std::fabs(acc.sum())))
                    throw CancellationError("relaxation series: cancellation exceeds tolerance");
                return acc.sum();
            }
        } else {
            quiet = 0;
        }
        if (max_abs * kEps > 1e3 * ctl.rel_tol * std::max(std::fabs(acc.sum()), ctl.abs_tol))
            throw CancellationError("relaxation series: terms too large for requested accuracy");
        prev = std::fabs(term);
    }
    throw ConvergenceError("relaxation series: no convergence within max_terms");
}

double relaxation_series_unpaired(const DistributedOrder& p0, double kappa, double t, const SeriesControl& ctl)
{
    const DistributedOrder p = p0.reduced();
    require(kappa >= 0.0 && t > 0.0, "relaxation requires kappa >= 0 and t > 0");
    ctl.validate();
    if (kappa == 0.0) return 1.0;
    // sum_r (-a)^r E^{r+1}_{nu2, delta r + 1}(-b) - sum_r (-a)^{r+1} E^{r+1}_{nu2, delta (r+1) + 1}(-b)
    const double b = kappa * std::pow(t, p.nu2) / p.n2;
    const double a = p.n1 * std::pow(t, p.delta()) / p.n2;
    if (a == 0.0) return gml_scaled({p.nu2, 1.0, 1.0, -b}, 0.0, ctl).value;
    const double la = std::log(a);
    Accumulator acc(SummationMode::compensated);
    double err = 0.0, max_abs = 0.0;
    int quiet = 0;
    for (int r = 0; r < ctl.max_terms; ++r) {
        GmlResult g1 = gml_scaled({p.nu2, p.delta() * r + 1.0, r + 1.0, -b}, r * la, ctl);
        GmlResult g2 = gml_scaled({p.nu2, p.delta() * (r + 1) + 1.0, r + 1.0, -b}, (r + 1) * la, ctl);
        double s = (r & 1) ? -1.0 : 1.0;
        double t1 = s * g1.value, t2 = s * g2.value;  // (-a)^{r+1} = -(-a)^r a
        acc.add(t1);
        acc.add(t2);
        err += g1.error + g2.error;
        max_abs = std::max({max_abs, std::fabs(t1), std::fabs(t2)});
        double mag = std::max(std::fabs(t1), std::fabs(t2));
        if (mag <= 0.1 * std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(acc.sum()))) {
            if (++quiet >= 2) {
                if (err + acc.rounding_error() > std::max(ctl.abs_tol, 1e3 * ctl.rel_tol * std::fabs(acc.sum())))
                    throw CancellationError("relaxation series: cancellation exceeds tolerance");
                return acc.sum();
            }
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("relaxation series: no convergence within max_terms");
}

double relaxation_invert(const DistributedOrder& p0, double kappa, double t)
{
    const DistributedOrder p = p0.reduced();
    require(kappa >= 0.0 && t > 0.0, "relaxation requires kappa >= 0 and t > 0");
    if (kappa == 0.0) return 1.0;
    Transform logF = [p, kappa](cplx eta) {
        cplx S = p.exponent(eta);
        return std::log(S / eta) - std::log(kappa + S);
    };
    return detail::invert_checked(logF, t, "relaxation_invert");
}

double relaxation(const DistributedOrder& p, double kappa, double t, const SeriesControl& ctl)
{
    try {
        return relaxation_series(p, kappa, t, ctl);
    } catch (const NumericalError&) {
        return relaxation_invert(p, kappa, t);
    }
}

double random_time_laplace(const DistributedOrder& p, double s, double t, const SeriesControl& ctl)
{
    require(s >= 0.0, "random_time_laplace requires s >= 0");
    return relaxation(p, p.lambda * s, t, ctl);
}

// ---- sampling ----------------------------------------------------------------

double default_horizon(const DistributedOrder& p, double t)
{
    return 100.0 * std::sqrt(q_moment(p, 2, t));
}

RandomTimeSampler::RandomTimeSampler(const DistributedOrder& p, double t, const SamplePlan& plan)
    : p_(p.reduced()), t_(t)
{
    plan.validate();
    require(t > 0.0, "sample_random_time requires t > 0");
    s_max_ = plan.s_max > 0.0 ? plan.s_max : default_horizon(p_, t);
    h_ = s_max_ / plan.path_grid;
    max_steps_ = 64L * plan.path_grid;
    c1_ = p_.n1 > 0.0 ? std::pow(p_.n1 / p_.lambda, 1.0 / p_.nu1) : 0.0;
    c2_ = std::pow(p_.n2 / p_.lambda, 1.0 / p_.nu2);
}

double RandomTimeSampler::operator()(Rng& rng) const
{
    if (p_.n1 == 0.0 && p_.nu2 == 1.0) return p_.lambda * t_;
    const double e1 = 1.0 / p_.nu1, e2 = 1.0 / p_.nu2;
    double level = t_, s = 0.0;
    for (long step = 0; step < max_steps_; ++step) {
        double x1 = c1_ > 0.0 ? unit_stable_draw(p_.nu1, rng) : 0.0;
        double x2 = p_.nu2 == 1.0 ? 1.0 : unit_stable_draw(p_.nu2, rng);
        auto D = [&](double u) { return c1_ * std::pow(u, e1) * x1 + c2_ * std::pow(u, e2) * x2; };
        double full = D(h_);
        if (full < level) {
            level -= full;
            s += h_;
            continue;
        }
        double lo = 0.0, hi = h_;
        for (int it = 0; it < 200 && hi - lo > 4.0 * kEps * (s + hi); ++it) {
            double mid = 0.5 * (lo + hi);
            (D(mid) < level ? lo : hi) = mid;
        }
        return s + 0.5 * (lo + hi);
    }
    throw ConvergenceError("sample_random_time: horizon exceeded after 64 extensions");
}

std::vector<double> sample_random_time(const DistributedOrder& p, double t, const SamplePlan& plan, Exec exec)
{
    RandomTimeSampler draw(p, t, plan);
    return generate_blocks<double>(plan.count, plan.seed, [&draw](Rng& rng) { return draw(rng); }, exec);
}

// ---- squared operator --------------------------------------------------------

double q_equation_residual(const DistributedOrder& p, double theta, double eta)
{
    p.validate();
    require(p.lambda == 1.0, "q_equation_residual requires lambda = 1");
    require(eta > 0.0, "q_equation_residual requires eta > 0");
    const double S = p.exponent(eta);
    // Fourier transform in x of the folded q(|x|, .) in the Laplace domain.
    const double LF = q_laplace(p, 0.0, eta) * 2.0 * S / (S * S + theta * theta);
    const double op = p.n1 * p.n1 * std::pow(eta, 2.0 * p.nu1) + p.n2 * p.n2 * std::pow(eta, 2.0 * p.nu2)
                      + 2.0 * p.n1 * p.n2 * std::pow(eta, p.nu1 + p.nu2) + theta * theta;
    return std::fabs(op * LF - 2.0 * S * S / eta);
}

std::array<double, 3> squared_operator_weights(const DistributedOrder& p)
{
    p.validate();
    return {p.n1 * p.n1, p.n2 * p.n2, 2.0 * p.n1 * p.n2};
}

} // namespace dofpp

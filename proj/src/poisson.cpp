#include "dofpp/poisson.hpp"

#include "detail/caputo.hpp"
#include "detail/inversion.hpp"
#include "dofpp/error.hpp"
#include "dofpp/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace dofpp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Sum of an alternating outer series of GML terms, term(r) already carrying
// its sign and scale. Throws CancellationError when the largest term leaves
// too few digits for the result.
template <class Term>
double outer_series(Term term, const SeriesControl& ctl, const char* what)
{
    Accumulator acc(ctl.summation_mode);
    double err = 0.0, max_abs = 0.0, prev = std::numeric_limits<double>::infinity();
    int quiet = 0;
    for (int r = 0; r < ctl.max_terms; ++r) {
        GmlResult g = term(r);
        acc.add(g.value);
        err += g.error;
        double mag = std::fabs(g.value);
        max_abs = std::max(max_abs, mag);
        double tol = std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(acc.sum()));
        if (r > 0 && mag <= 0.1 * tol && mag <= prev) {
            if (++quiet >= 2) {
                if (err + acc.rounding_error() > std::max(ctl.abs_tol, 1e3 * ctl.rel_tol * std::fabs(acc.sum())))
                    throw CancellationError(std::string(what) + ": cancellation exceeds tolerance");
                return acc.sum();
            }
        } else {
            quiet = 0;
        }
        if (max_abs * kEps > 1e3 * ctl.rel_tol * std::max(std::fabs(acc.sum()), ctl.abs_tol))
            throw CancellationError(std::string(what) + ": terms too large for requested accuracy");
        prev = mag;
    }
    throw ConvergenceError(std::string(what) + ": no convergence within max_terms");
}

double pmf_invert(const DistributedOrder& p, int k, double t)
{
    const double lam = p.lambda;
    Transform logF = [p, k, lam](cplx eta) {
        cplx S = p.exponent(eta);
        return k * std::log(lam) + std::log(S / eta) - (k + 1.0) * std::log(lam + S);
    };
    return detail::invert_checked(logF, t, "pmf inversion");
}

// Mixture integral int_0^inf y^k e^-y / k! q(y, t) dy for several k, with
// q memoised so the k values share density evaluations.
std::vector<double> mixture_integrals(const DistributedOrder& p, int k_max, double t)
{
    const QRange range = q_range(p, t);
    std::map<double, double> memo;
    auto q = [&](double y) {
        auto it = memo.find(y);
        if (it != memo.end()) return it->second;
        double v = q_node(p, y, t, range.y_negligible);
        memo.emplace(y, v);
        return v;
    };
    std::vector<double> out(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        const double top = std::min(range.y_top, k + 40.0 + 10.0 * std::sqrt(k + 1.0));
        const double lgk = log_gamma(k + 1.0);
        auto f = [&](double y) {
            if (y <= 0.0) return k == 0 ? q(0.0) : 0.0;
            return std::exp(k * std::log(y) - y - lgk) * q(y);
        };
        double err = 0.0;
        double I = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, top, 12, 1e-11, &err);
        if (!std::isfinite(I) || err > 1e-8)
            throw QuadratureError("pmf mixture: quadrature did not converge");
        out[k] = I;
    }
    return out;
}

} // namespace

const char* route_name(PmfRoute r)
{
    switch (r) {
    case PmfRoute::automatic: return "auto";
    case PmfRoute::mixture_integral: return "mixture_integral";
    case PmfRoute::laplace_inversion: return "laplace_inversion";
    case PmfRoute::series_k0: return "series_k0";
    }
    return "?";
}

void PmfRequest::validate() const
{
    p.validate();
    require(k >= 0, "PmfRequest requires k >= 0");
    require(t > 0.0, "PmfRequest requires t > 0");
    require(route != PmfRoute::series_k0 || k == 0, "series_k0 route requires k = 0");
}

void PgfRequest::validate() const
{
    p.validate();
    require(u >= 0.0 && u <= 1.0, "PgfRequest requires 0 <= u <= 1");
    require(t > 0.0, "PgfRequest requires t > 0");
}

PmfValue pmf(const PmfRequest& req, const SeriesControl& ctl)
{
    req.validate();
    const DistributedOrder p = req.p.reduced();
    switch (req.route) {
    case PmfRoute::laplace_inversion: return {pmf_invert(p, req.k, req.t), req.route};
    case PmfRoute::mixture_integral: return {mixture_integrals(p, req.k, req.t).back(), req.route};
    case PmfRoute::series_k0: return {relaxation_series(p, p.lambda, req.t, ctl), req.route};
    case PmfRoute::automatic: break;
    }
    try {
        return {pmf_invert(p, req.k, req.t), PmfRoute::laplace_inversion};
    } catch (const NumericalError&) {
    }
    if (req.k == 0) {
        try {
            return {relaxation_series(p, p.lambda, req.t, ctl), PmfRoute::series_k0};
        } catch (const NumericalError&) {
        }
    }
    return {mixture_integrals(p, req.k, req.t).back(), PmfRoute::mixture_integral};
}

std::vector<double> pmf_mixture(const DistributedOrder& p, int k_max, double t)
{
    p.validate();
    require(k_max >= 0 && t > 0.0, "pmf_mixture requires k_max >= 0 and t > 0");
    return mixture_integrals(p.reduced(), k_max, t);
}

int pmf_cutoff(const DistributedOrder& p, double t, double tail)
{
    require(tail > 0.0 && tail < 1.0, "pmf_cutoff requires 0 < tail < 1");
    const double m = factorial_moment(p, 1, t);
    const double var = factorial_moment(p, 2, t) + m - m * m;
    return static_cast<int>(std::ceil(m + std::sqrt(std::max(var, 0.0) / tail)));
}

double pgf(const PgfRequest& req, const SeriesControl& ctl)
{
    req.validate();
    return random_time_laplace(req.p, 1.0 - req.u, req.t, ctl);
}

double pgf_equation_residual(const DistributedOrder& p0, double u, double t, int intervals)
{
    const DistributedOrder p = p0.reduced();
    require(u >= 0.0 && u <= 1.0 && t > 0.0, "pgf_equation_residual requires 0 <= u <= 1 and t > 0");
    require(intervals >= 4, "pgf_equation_residual requires at least 4 intervals");
    const double kappa = p.lambda * (1.0 - u);
    SampledFunction G = sample_uniform(
        [&](double s) { return s == 0.0 ? 1.0 : relaxation(p, kappa, s); }, t, intervals, true);
    const double h = G.step();
    double lhs = kappa * G.values.back();
    if (p.n1 > 0.0) lhs += p.n1 * detail::caputo_last(G.values, h, p.nu1);
    lhs += p.n2 * detail::caputo_last(G.values, h, p.nu2);
    return std::fabs(lhs);
}

double factorial_moment(const DistributedOrder& p0, int k, double t, const SeriesControl& ctl0)
{
    const SeriesControl ctl = relative_only(ctl0);
    const DistributedOrder p = p0.reduced();
    require(k >= 1, "factorial_moment requires k >= 1");
    require(t > 0.0, "factorial_moment requires t > 0");
    const double d = p.delta();
    const double a = p.n1 * std::pow(t, d) / p.n2;
    const double lt = std::log(t), ll = std::log(p.lambda), ln2 = std::log(p.n2), lk = log_gamma(k + 1.0);
    // (lambda^k t^(nu2 k) / n2^k) k! E^{k+1}_{d, nu2 k + 1}(-a)
    double second = gml_scaled({d, p.nu2 * k + 1.0, k + 1.0, -a}, k * (ll + p.nu2 * lt - ln2) + lk, ctl).value;
    if (p.n1 == 0.0) return second;
    // (n1 lambda^k t^(nu2 k + d) / n2^(k+1)) k! E^{k+1}_{d, nu2 k + d + 1}(-a)
    double first = gml_scaled({d, p.nu2 * k + d + 1.0, k + 1.0, -a},
                              std::log(p.n1) + k * ll + (p.nu2 * k + d) * lt - (k + 1.0) * ln2 + lk, ctl)
                       .value;
    return first + second;
}

double interarrival_series(const DistributedOrder& p0, double t, const SeriesControl& ctl)
{
    const DistributedOrder p = p0.reduced();
    require(t > 0.0, "interarrival_density requires t > 0");
    ctl.validate();
    // (lambda/n2) t^(nu2-1) sum_r (-a)^r E^{r+1}_{nu2, nu2 + d r}(-b)
    const double d = p.delta();
    const double b = p.lambda * std::pow(t, p.nu2) / p.n2;
    const double a = p.n1 * std::pow(t, d) / p.n2;
    const double base = std::log(p.lambda / p.n2) + (p.nu2 - 1.0) * std::log(t);
    if (a == 0.0) return gml_scaled({p.nu2, p.nu2, 1.0, -b}, base, ctl).value;
    const double la = std::log(a);
    return outer_series(
        [&](int r) {
            GmlResult g = gml_scaled({p.nu2, p.nu2 + d * r, r + 1.0, -b}, base + r * la, ctl);
            if (r & 1) g.value = -g.value;
            return g;
        },
        ctl, "interarrival series");
}

double interarrival_invert(const DistributedOrder& p0, double t)
{
    const DistributedOrder p = p0.reduced();
    require(t > 0.0, "interarrival_density requires t > 0");
    const double lam = p.lambda;
    Transform logF = [p, lam](cplx eta) { return std::log(lam) - std::log(lam + p.exponent(eta)); };
    return detail::invert_checked(logF, t, "interarrival inversion");
}

double interarrival_density(const DistributedOrder& p, double t, const SeriesControl& ctl)
{
    try {
        double v = interarrival_series(p, t, ctl);
        if (v >= 0.0) return v;
    } catch (const NumericalError&) {
    }
    return interarrival_invert(p, t);
}

double survival(const DistributedOrder& p, double t, const SeriesControl& ctl)
{
    p.validate();
    require(t >= 0.0, "survival requires t >= 0");
    if (t == 0.0) return 1.0;
    return relaxation(p, p.lambda, t, ctl);
}

double survival_equation_residual(const DistributedOrder& p, double t, int intervals)
{
    return pgf_equation_residual(p, 0.0, t, intervals);
}

double waiting_time_laplace(const DistributedOrder& p, int k, double eta)
{
    p.validate();
    require(k >= 1 && eta > 0.0, "waiting_time_laplace requires k >= 1 and eta > 0");
    return std::pow(p.lambda / (p.lambda + p.exponent(eta)), k);
}

double waiting_time_density(const DistributedOrder& p0, int k, double t)
{
    const DistributedOrder p = p0.reduced();
    require(k >= 1 && t > 0.0, "waiting_time_density requires k >= 1 and t > 0");
    const double lam = p.lambda;
    Transform logF = [p, k, lam](cplx eta) { return static_cast<double>(k) * (std::log(lam) - std::log(lam + p.exponent(eta))); };
    return detail::invert_checked(logF, t, "waiting time inversion");
}

double renewal_function(const DistributedOrder& p, double t, const SeriesControl& ctl)
{
    return factorial_moment(p, 1, t, ctl);
}

// ---- asymptotic ratios -------------------------------------------------------

double interarrival_small_t_ratio(const DistributedOrder& p0, double t)
{
    const DistributedOrder p = p0.reduced();
    return interarrival_density(p, t) * p.n2 * gamma_fn(p.nu2) / (p.lambda * std::pow(t, p.nu2 - 1.0));
}

double interarrival_large_t_ratio(const DistributedOrder& p, double t)
{
    require(p.n1 > 0.0, "large-t ratios need n1 > 0");
    return interarrival_density(p, t) * p.lambda * gamma_fn(1.0 - p.nu1) / (p.n1 * p.nu1 * std::pow(t, -1.0 - p.nu1));
}

double survival_small_t_ratio(const DistributedOrder& p0, double t)
{
    const DistributedOrder p = p0.reduced();
    return (1.0 - survival(p, t)) / (p.lambda * std::pow(t, p.nu2) / (p.n2 * gamma_fn(p.nu2 + 1.0)));
}

double survival_large_t_ratio(const DistributedOrder& p, double t)
{
    require(p.n1 > 0.0, "large-t ratios need n1 > 0");
    return survival(p, t) * p.lambda * gamma_fn(1.0 - p.nu1) * std::pow(t, p.nu1) / p.n1;
}

double renewal_small_t_ratio(const DistributedOrder& p0, double t)
{
    const DistributedOrder p = p0.reduced();
    return renewal_function(p, t) / (p.lambda * std::pow(t, p.nu2) / (p.n2 * gamma_fn(p.nu2 + 1.0)));
}

double renewal_large_t_ratio(const DistributedOrder& p, double t)
{
    require(p.n1 > 0.0, "large-t ratios need n1 > 0");
    return renewal_function(p, t) / (p.lambda * std::pow(t, p.nu1) / (p.n1 * gamma_fn(p.nu1 + 1.0)));
}

AsymptoticRatios asymptotic_ratios(const DistributedOrder& p, double ts, double tl)
{
    AsymptoticRatios r;
    r.interarrival_small = interarrival_small_t_ratio(p, ts);
    r.interarrival_large = interarrival_large_t_ratio(p, tl);
    r.survival_small = survival_small_t_ratio(p, ts);
    r.survival_large = survival_large_t_ratio(p, tl);
    r.renewal_small = renewal_small_t_ratio(p, ts);
    r.renewal_large = renewal_large_t_ratio(p, tl);
    return r;
}

// ---- nu2 = 1 -------------------------------------------------------------------

double interpolated_pmf(const DistributedOrder& p, int k, double t, InterpolationRoute route, const SeriesControl& ctl)
{
    p.validate();
    require(p.nu2 == 1.0, "interpolated_pmf requires nu2 = 1");
    require(k >= 0 && t > 0.0, "interpolated_pmf requires k >= 0 and t > 0");
    (void)ctl;
    if (p.n1 == 0.0) {
        const double lt = p.lambda * t;
        return std::exp(k * std::log(lt) - lt - log_gamma(k + 1.0));
    }
    if (route == InterpolationRoute::laplace_inversion) return pmf_invert(p.reduced(), k, t);
    return mixture_integrals(p.reduced(), k, t).back();
}

double interpolated_mean(const DistributedOrder& p, double t, const SeriesControl& ctl)
{
    p.validate();
    require(p.nu2 == 1.0, "interpolated_mean requires nu2 = 1");
    if (p.n2 == 0.0) return factorial_moment(p, 1, t, ctl);
    const double d = 1.0 - p.nu1;
    return p.lambda * t / p.n2 * mittag_leffler(d, 2.0, -p.n1 * std::pow(t, d) / p.n2, ctl);
}

std::pair<double, double> kummer_forms(const DistributedOrder& p, double u, double t, const SeriesControl& ctl)
{
    p.validate();
    require(p.nu2 == 1.0, "kummer_forms requires nu2 = 1");
    require(p.n2 > 0.0, "kummer_forms requires n2 > 0");
    require(u >= 0.0 && u <= 1.0 && t > 0.0, "kummer_forms requires 0 <= u <= 1 and t > 0");
    const double d = 1.0 - p.nu1;
    const double a = p.n1 * std::pow(t, d) / p.n2;
    const double b = p.lambda * (1.0 - u) * t / p.n2;
    const double bf = p.lambda * t / p.n2;
    auto scaled = [&](double g, double c, double z, double log_pref, int sign) {
        double v = kummer_1f1(g, c, z, ctl);
        GmlResult out;
        int sg = 1;
        double lr = -log_gamma(c, &sg);
        out.value = sign * sg * v * std::exp(log_pref + lr);
        out.error = std::fabs(out.value) * 10.0 * ctl.rel_tol;
        return out;
    };
    double G, f1;
    if (a == 0.0) {
        G = std::exp(-b);
        f1 = p.lambda / p.n2 * std::exp(-bf);
    } else {
        const double la = std::log(a);
        // sum_r (-a)^r/Gamma(r d+1) 1F1(r+1; r d+1; -b) - sum_r (-a)^{r+1}/Gamma((r+1)d+1) 1F1(r+1; (r+1)d+1; -b)
        G = b == 0.0 ? 1.0 : outer_series(
                [&](int r) {
                    int s = (r & 1) ? -1 : 1;
                    GmlResult x = scaled(r + 1.0, r * d + 1.0, -b, r * la, s);
                    GmlResult y = scaled(r + 1.0, (r + 1) * d + 1.0, -b, (r + 1) * la, s);
                    return GmlResult{x.value + y.value, x.error + y.error, GmlMethod::series};
                },
                ctl, "kummer pgf");
        f1 = outer_series(
            [&](int r) { return scaled(r + 1.0, r * d + 1.0, -bf, std::log(p.lambda / p.n2) + r * la, (r & 1) ? -1 : 1); },
            ctl, "kummer interarrival");
    }
    return {G, f1};
}

std::vector<long> simulate_counts(const DistributedOrder& p, double t, const SamplePlan& plan, Exec exec)
{
    RandomTimeSampler time(p, t, plan);
    return generate_blocks<long>(
        plan.count, plan.seed ^ 0x9e3779b97f4a7c15ULL,
        [&time](Rng& rng) {
            double T = time(rng);
            if (T <= 0.0) return 0L;
            std::poisson_distribution<long> pois(T);
            return pois(rng);
        },
        exec);
}

} // namespace dofpp

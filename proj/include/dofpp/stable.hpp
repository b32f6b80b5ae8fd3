#pragma once

#include "dofpp/parallel.hpp"
#include "dofpp/sampling.hpp"
#include "dofpp/series.hpp"

#include <vector>

namespace dofpp {

// One-sided stable law with Laplace transform
// exp(-sigma^alpha eta^alpha / cos(pi alpha / 2) - mu eta).
// point_mass marks the degenerate law concentrated at mu (sigma -> 0, or
// alpha = 1 where the law is a shift).
struct StableParams {
    double alpha = 0.5;
    double beta_skew = 1.0;
    double mu = 0.0;
    double sigma = 1.0;
    bool point_mass = false;

    // Built from the Laplace-exponent coefficient zeta = sigma^alpha / cos(pi alpha / 2).
    static StableParams from_zeta(double alpha, double zeta, double mu = 0.0);
    static StableParams degenerate(double at);

    double zeta() const;
    void validate() const;
};

struct FellerParams {
    double gamma_feller = 0.5;
    double zeta = 1.0;
};

FellerParams feller_params(const StableParams& p);

// Density of the unit law (transform exp(-eta^alpha)) at x > 0.
double unit_stable_pdf(double alpha, double x, const SeriesControl& ctl = {});
// Feller series only; throws CancellationError where it cannot reach ctl.
double unit_stable_pdf_feller(double alpha, double x, const SeriesControl& ctl = {});
// Zolotarev integral only.
double unit_stable_pdf_integral(double alpha, double x);

double stable_pdf(const StableParams& p, double x, const SeriesControl& ctl = {});

// One draw from the unit law (Kanter's form of the Chambers-Mallows-Stuck method).
double unit_stable_draw(double alpha, Rng& rng);

std::vector<double> stable_sample(const StableParams& p, const SamplePlan& plan, Exec exec = Exec::parallel);

// g(w) = int_0^w pdf1(w - x) pdf2(x) dx.
double stable_convolve(const StableParams& p1, const StableParams& p2, double w, int quad_n = 12);

// Folded diffusion density (1/(c t^alpha)) M_alpha(|y| / (c t^alpha)) for y >= 0,
// 0 for y < 0, with M_alpha(z) = W_{-alpha,1-alpha}(-z).
double folded_diffusion_density(double alpha, double c, double y, double t, const SeriesControl& ctl = {});

// M-Wright function; Wright series, or the stable relation
// M_alpha(z) = z^(-1-1/alpha) L_alpha(z^(-1/alpha)) / alpha when the series cancels.
double m_wright(double alpha, double z, const SeriesControl& ctl = {});

} // namespace dofpp

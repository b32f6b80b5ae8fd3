#include "helpers.hpp"

#include "dofpp/error.hpp"
#include "dofpp/laplace.hpp"
#include "dofpp/specfun.hpp"

#include <cmath>

using namespace dofpp;

namespace {

LaplaceSpec spec_of(Transform f, int nodes = 48)
{
    LaplaceSpec s;
    s.transform = std::move(f);
    s.nodes = nodes;
    return s;
}

} // namespace

TEST_CASE("inversion of elementary pairs")
{
    LaplaceSpec one = spec_of([](cplx s) { return 1.0 / s; });
    for (double t : {0.01, 1.0, 30.0}) CHECK_ABS(invert(one, t), 1.0, 1e-12);
    LaplaceSpec ex = spec_of([](cplx s) { return 1.0 / (s + 2.0); });
    for (double t : {0.1, 1.0, 3.0}) CHECK_REL(invert(ex, t), std::exp(-2.0 * t), 1e-10);
}

TEST_CASE("inversion of the mittag-leffler pair")
{
    LaplaceSpec ml = spec_of([](cplx s) { return std::pow(s, -0.4) / (std::pow(s, 0.6) + 1.0); });
    CHECK_REL(invert(ml, 1.0), mittag_leffler(0.6, 1.0, -1.0), 1e-8);
    LaplaceSpec logml;
    logml.log_transform = [](cplx s) { return -0.4 * std::log(s) - std::log(std::pow(s, 0.6) + 1.0); };
    logml.nodes = 48;
    CHECK_REL(invert(logml, 1.0), mittag_leffler(0.6, 1.0, -1.0), 1e-8);
}

TEST_CASE("gaver-stehfest on a smooth pair")
{
    LaplaceSpec gs = spec_of([](cplx s) { return 1.0 / (s + 2.0); }, 16);
    gs.inversion_method = InversionMethod::gaver_stehfest;
    CHECK_REL(invert(gs, 0.7), std::exp(-1.4), 1e-4);
}

TEST_CASE("adaptive contour reports an error estimate")
{
    Transform logf = [](cplx s) { return -std::log(s + 1.0); };
    InversionResult r = talbot_adaptive(logf, 2.0, 16, 512, 1e-12, 1e-15);
    CHECK_REL(r.value, std::exp(-2.0), 1e-11);
    CHECK(r.error < 1e-10);
    CHECK(r.scale > 0.0);
}

TEST_CASE("forward transform")
{
    CHECK_REL(forward([](double) { return 1.0; }, 2.5), 0.4, 1e-10);
    // t^(beta-1) E^delta_{nu,beta}(omega t^nu) <-> eta^(nu delta - beta) / (eta^nu - omega)^delta.
    const double nu = 0.5, beta = 1.5, delta = 2.0, omega = -1.0, eta = 2.0;
    auto f = [&](double t) { return std::pow(t, beta - 1.0) * gml({nu, beta, delta, omega * std::pow(t, nu)}); };
    const double want = std::pow(eta, nu * delta - beta) / std::pow(std::pow(eta, nu) - omega, delta);
    CHECK_REL(forward(f, eta), want, 1e-8);
    CHECK_THROWS_AS(forward(f, 0.0), InvalidArgument);
}

TEST_CASE("riemann-liouville integral of powers")
{
    SampledFunction one = sample_uniform([](double) { return 1.0; }, 1.0, 256);
    CHECK_REL(rl_fractional_integral(one, 0.5), 1.0 / gamma_fn(1.5), 1e-12);
    SampledFunction lin = sample_uniform([](double s) { return s; }, 1.0, 256);
    CHECK_REL(rl_fractional_integral(lin, 0.5), gamma_fn(2.0) / gamma_fn(2.5), 1e-12);
    std::vector<double> grid = rl_fractional_integral_grid(lin, 0.5);
    CHECK(grid.front() == 0.0);
    CHECK_REL(grid.back(), gamma_fn(2.0) / gamma_fn(2.5), 1e-12);
}

TEST_CASE("caputo derivative by the L1 scheme")
{
    SampledFunction lin = sample_uniform([](double s) { return s; }, 1.0, 128);
    CHECK_REL(caputo_derivative(lin, 0.5), 1.0 / gamma_fn(1.5), 1e-12);
    SampledFunction c = sample_uniform([](double) { return 3.0; }, 1.0, 128);
    CHECK(caputo_derivative(c, 0.5) == 0.0);
    // Eigenfunction: D^nu E_nu(-t^nu) = -E_nu(-t^nu).
    SampledFunction e = sample_uniform([](double s) { return mittag_leffler(0.6, 1.0, -std::pow(s, 0.6)); }, 1.0, 2048);
    CHECK_ABS(caputo_derivative(e, 0.6), -mittag_leffler(0.6, 1.0, -1.0), 5e-3);
}

TEST_CASE("laplace spec validation")
{
    LaplaceSpec none;
    CHECK_THROWS_AS(none.validate(), InvalidArgument);
    LaplaceSpec few = spec_of([](cplx s) { return 1.0 / s; }, 4);
    CHECK_THROWS_AS(invert(few, 1.0), InvalidArgument);
    LaplaceSpec ok = spec_of([](cplx s) { return 1.0 / s; });
    CHECK_THROWS_AS(invert(ok, 0.0), InvalidArgument);
    SampledFunction tiny{{1.0, 2.0}, 1.0};
    CHECK_THROWS_AS(caputo_derivative(tiny, 0.5), InvalidArgument);
}

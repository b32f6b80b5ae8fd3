#include "helpers.hpp"

#include "dofpp/diffusion.hpp"
#include "dofpp/error.hpp"
#include "dofpp/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <limits>

using namespace dofpp;

TEST_CASE("heat kernel when the order is one")
{
    const auto p = DistributedOrder::make(0.5, 1.0, 0.0);
    for (double x : {0.0, 0.5, 2.0})
        for (double t : {0.3, 1.0}) {
            double want = std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * M_PI * t);
            CHECK_REL(density({x, t, p}), want, 1e-13);
        }
}

TEST_CASE("diffusion density reference values")
{
    // Oracle: mpmath inversion of sqrt(S) exp(-|x| sqrt(S)) / (2 eta).
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    CHECK_REL(density({0.0, 1.0, p}), 0.37996455270724682, 1e-8);
    CHECK_REL(density({1.0, 1.0, p}), 0.19477286686855428, 1e-8);
    CHECK_REL(density_invert(p, 1.0, 1.0), 0.19477286686855428, 1e-9);
}

TEST_CASE("diffusion density is symmetric and normalized")
{
    const auto p = DistributedOrder::make(0.3, 0.7, 0.8);
    DiffusionDensity v(p, 2.0);
    for (double x : {0.1, 0.9, 3.3}) CHECK(v(x) == v(-x));
    boost::math::quadrature::exp_sinh<double> q;
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_ABS(2.0 * q.integrate([&](double x) { return v(x); }, 0.0, inf), 1.0, 1e-8);
    CHECK_REL(2.0 * q.integrate([&](double x) { return x * x * v(x); }, 0.0, inf), moment(p, 2, 2.0), 1e-8);
    // Fourier transform at theta = 1.
    double ft = 2.0 * q.integrate([&](double x) { return std::cos(x) * v(x); }, 0.0, inf);
    CHECK_ABS(ft, fourier_transform(1.0, 2.0, p), 1e-7);
}

TEST_CASE("fourier transform")
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    CHECK(fourier_transform(0.0, 1.0, p) == 1.0);
    const auto s = DistributedOrder::make(0.2, 0.6, 0.0);
    CHECK_REL(fourier_transform(1.3, 2.0, s), mittag_leffler(0.6, 1.0, -1.69 * std::pow(2.0, 0.6)), 1e-12);
}

TEST_CASE("diffusion moments")
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    const double t = 1.7;
    CHECK(moment(p, 1, t) == 0.0);
    CHECK(moment(p, 3, t) == 0.0);
    CHECK_REL(moment(p, 2, t), second_moment_closed_form(p, t), 1e-12);
    const double a = std::pow(t, 0.4);
    CHECK_REL(second_moment_closed_form(p, t), 2.0 * std::pow(t, 0.8) / 0.5 * mittag_leffler(0.4, 1.8, -a), 1e-13);
    // E B^(2h) = (2h)! / h! E T^h.
    CHECK_REL(moment(p, 4, t), 12.0 * q_moment(p, 2, t), 1e-10);
    CHECK_REL(moment(p, 6, t), 120.0 * q_moment(p, 3, t), 1e-10);
}

TEST_CASE("regime classification")
{
    RegimeReport r = regime_report(DistributedOrder::make(0.3, 0.45, 0.5));
    CHECK(r.label == "retardation-emphasized");
    CHECK(r.diffusion_small_exponent == doctest::Approx(0.45));
    CHECK(r.diffusion_large_exponent == doctest::Approx(0.3));
    CHECK(r.squared_large_exponent == doctest::Approx(0.6));
    CHECK(r.squared_small_exponent == doctest::Approx(0.9));
    RegimeReport acc = regime_report(DistributedOrder::make(0.6, 0.9, 0.5));
    CHECK(acc.label == "acceleration");
    CHECK(acc.squared_small_exponent == doctest::Approx(1.8));
    CHECK(acc.squared_large_exponent == doctest::Approx(1.2));
    RegimeReport mix = regime_report(DistributedOrder::make(0.3, 0.8, 0.5));
    CHECK(mix.label == "mixed");
    CHECK(mix.squared_small_exponent == doctest::Approx(1.6));
}

TEST_CASE("regime slopes")
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    RegimeSlopes s = regime_slopes(p, 1e-3, 1e4);
    CHECK_ABS(s.diffusion_small, 0.8, 0.05);
    CHECK_ABS(s.diffusion_large, 0.4, 0.05);
    CHECK_ABS(s.squared_small, 1.6, 0.05);
    CHECK_ABS(s.squared_large, 0.8, 0.05);
}

TEST_CASE("fourier-domain equation residual")
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    CHECK(diffusion_equation_residual(p, 0.0, 1.0, 256) == 0.0);
    double coarse = diffusion_equation_residual(p, 1.0, 1.0, 1024);
    double fine = diffusion_equation_residual(p, 1.0, 1.0, 2048);
    CHECK(fine < 5e-3);
    CHECK(fine < coarse);
    const auto heat = DistributedOrder::make(0.5, 1.0, 0.0);
    CHECK(diffusion_equation_residual(heat, 1.0, 1.0, 2048) < 1e-3);
}

TEST_CASE("diffusion requires unit rate")
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5, 2.0);
    CHECK_THROWS_AS(density({0.0, 1.0, p}), InvalidArgument);
    CHECK_THROWS_AS(moment(p, 2, 1.0), InvalidArgument);
}

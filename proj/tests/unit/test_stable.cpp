#include "helpers.hpp"

#include "dofpp/error.hpp"
#include "dofpp/stable.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>

using namespace dofpp;

namespace {

// Levy law: transform exp(-sqrt(2 s eta)).
double levy(double s, double x)
{
    return std::sqrt(s / (2.0 * M_PI)) * std::pow(x, -1.5) * std::exp(-s / (2.0 * x));
}

StableParams with_sigma(double alpha, double sigma)
{
    StableParams p;
    p.alpha = alpha;
    p.sigma = sigma;
    return p;
}

} // namespace

TEST_CASE("half-stable law is the Levy density")
{
    const StableParams p = with_sigma(0.5, 1.3);
    for (double x : {0.2, 1.0, 5.0, 40.0}) CHECK_REL(stable_pdf(p, x), levy(1.3, x), 1e-10);
    CHECK(stable_pdf(p, 0.0) == 0.0);
    CHECK(stable_pdf(p, -1.0) == 0.0);
}

TEST_CASE("unit stable density reference values")
{
    CHECK_REL(unit_stable_pdf(0.7, 2.0), 0.10768834487433713, 1e-9);
    CHECK_REL(unit_stable_pdf(0.7, 0.3), 0.63311518064929969, 1e-9);
    CHECK_REL(unit_stable_pdf_feller(0.7, 2.0), unit_stable_pdf_integral(0.7, 2.0), 1e-9);
}

TEST_CASE("unit stable density integrates to one")
{
    for (double a : {0.3, 0.6, 0.9}) {
        boost::math::quadrature::exp_sinh<double> q;
        double total = q.integrate([a](double x) { return unit_stable_pdf(a, x); }, 0.0,
                                   std::numeric_limits<double>::infinity());
        CHECK_ABS(total, 1.0, 1e-6);
    }
}

TEST_CASE("zeta and sigma describe the same law")
{
    StableParams a = StableParams::from_zeta(0.6, 2.0);
    CHECK_REL(a.zeta(), 2.0, 1e-14);
    // Scaling: X = zeta^(1/alpha) U with U unit.
    const double s = std::pow(2.0, 1.0 / 0.6);
    CHECK_REL(stable_pdf(a, 1.7), unit_stable_pdf(0.6, 1.7 / s) / s, 1e-10);
    StableParams shifted = StableParams::from_zeta(0.6, 2.0, 0.5);
    CHECK_REL(stable_pdf(shifted, 2.2), stable_pdf(a, 1.7), 1e-14);
    CHECK(stable_pdf(shifted, 0.5) == 0.0);
}

TEST_CASE("stable samples match the transform")
{
    SamplePlan plan;
    plan.count = 100000;
    plan.seed = 42;
    const StableParams p = with_sigma(0.5, 1.0);
    std::vector<double> xs = stable_sample(p, plan);
    double s1 = 0.0, s2 = 0.0;
    for (double x : xs) {
        double e = std::exp(-x);
        s1 += e;
        s2 += e * e;
    }
    const double n = static_cast<double>(xs.size());
    const double mean = s1 / n, se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::fabs(mean - std::exp(-std::sqrt(2.0))) <= 3.0 * se);
}

TEST_CASE("stable sampling is reproducible")
{
    SamplePlan plan;
    plan.count = 1;
    plan.seed = 9;
    const StableParams p = with_sigma(0.7, 1.0);
    CHECK(stable_sample(p, plan)[0] == stable_sample(p, plan)[0]);
    plan.count = 5000;
    CHECK(stable_sample(p, plan, Exec::serial) == stable_sample(p, plan, Exec::parallel));
}

TEST_CASE("convolution of stable laws")
{
    // Half-stable laws add: scale (sqrt s1 + sqrt s2)^2.
    const double s1 = 0.4, s2 = 1.1, w = 2.5;
    const double s = std::pow(std::sqrt(s1) + std::sqrt(s2), 2.0);
    CHECK_REL(stable_convolve(with_sigma(0.5, s1), with_sigma(0.5, s2), w), levy(s, w), 1e-8);
    const StableParams one = with_sigma(0.7, 1.0);
    CHECK_REL(stable_convolve(one, StableParams::degenerate(0.0), 1.5), stable_pdf(one, 1.5), 1e-14);
    CHECK_REL(stable_convolve(with_sigma(0.5, 1.0), with_sigma(0.8, 1.0), 10.0), 0.031713994681629092, 1e-6);
    CHECK_ABS(stable_convolve(with_sigma(0.5, 1.0), with_sigma(0.8, 1.0), 1.0), 1.790528520274456e-19, 1e-21);
}

TEST_CASE("folded diffusion density")
{
    CHECK(folded_diffusion_density(0.4, 1.0, -0.5, 1.0) == 0.0);
    boost::math::quadrature::exp_sinh<double> q;
    double total = q.integrate([](double y) { return folded_diffusion_density(0.4, 1.0, y, 1.0); }, 0.0,
                               std::numeric_limits<double>::infinity());
    CHECK_ABS(total, 1.0, 1e-6);
    // alpha = 1/2: half-normal with variance 2 c^2 t.
    for (double z : {0.0, 0.7, 3.0, 9.0}) CHECK_REL(m_wright(0.5, z), std::exp(-z * z / 4.0) / std::sqrt(M_PI), 1e-12);
}

TEST_CASE("stable parameter validation")
{
    CHECK_THROWS_AS(StableParams::from_zeta(1.2, 1.0).validate(), InvalidArgument);
    CHECK_THROWS_AS(StableParams::from_zeta(0.5, -1.0).validate(), InvalidArgument);
}

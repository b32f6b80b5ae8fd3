#include "helpers.hpp"

#include "dofpp/error.hpp"
#include "dofpp/laplace.hpp"
#include "dofpp/randomtime.hpp"
#include "dofpp/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

using namespace dofpp;

TEST_CASE("order parameters")
{
    DistributedOrder p = DistributedOrder::make(0.4, 0.8, 0.3, 2.0);
    CHECK(p.n2 == doctest::Approx(0.7));
    CHECK(p.delta() == doctest::Approx(0.4));
    CHECK_REL(p.exponent(2.0), 0.3 * std::pow(2.0, 0.4) + 0.7 * std::pow(2.0, 0.8), 1e-15);
    CHECK_REL(std::real(p.exponent(cplx(2.0, 0.0))), p.exponent(2.0), 1e-15);

    try {
        DistributedOrder::make(0.8, 0.4, 0.5).validate();
        FAIL("reversed orders accepted");
    } catch (const InvalidArgument& e) {
        CHECK(std::string(e.what()).find("requires nu1 < nu2") != std::string::npos);
    }
    CHECK_THROWS_AS(DistributedOrder::make(0.4, 1.2, 0.5).validate(), InvalidArgument);
    CHECK_THROWS_AS(DistributedOrder::make(0.4, 0.8, 1.5).validate(), InvalidArgument);
    CHECK_THROWS_AS(DistributedOrder::make(0.4, 0.8, 0.5, 0.0).validate(), InvalidArgument);

    // Equal orders and n2 = 0 both become a single order in the nu2 slot.
    DistributedOrder eq = DistributedOrder::make(0.6, 0.6, 0.3);
    CHECK(eq.n1 == 0.0);
    CHECK(eq.nu2 == 0.6);
    DistributedOrder low = DistributedOrder::make(0.3, 0.9, 1.0).reduced();
    CHECK(low.n1 == 0.0);
    CHECK(low.nu2 == 0.3);
}

TEST_CASE("random-time density reference values")
{
    // Oracle: mpmath inversion of (S / (lambda eta)) exp(-S y / lambda).
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    CHECK_REL(q_density(p, 0.05, 1.0).value, 0.449519434030692, 1e-9);
    CHECK_REL(q_density(p, 1.0, 1.0).value, 0.47201354503581558, 1e-9);
    const auto p2 = DistributedOrder::make(0.3, 0.9, 0.4);
    const double want = 0.41568179961294605;
    CHECK_REL(q_series(p2, 0.5, 1.0), want, 1e-9);
    CHECK_REL(q_invert(p2, 0.5, 1.0), want, 1e-9);
    CHECK_REL(q_integral(p2, 0.5, 1.0), want, 1e-6);
}

TEST_CASE("random-time density integrates to one")
{
    for (double t : {0.3, 1.0, 4.0}) {
        const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
        const QRange r = q_range(p, t);
        double err = 0.0;
        double total = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double y) { return q_node(p, y, t, r.y_negligible); }, 0.0, r.y_top, 12, 1e-11, &err);
        CHECK_ABS(total, 1.0, 1e-6);
    }
}

TEST_CASE("random-time transform")
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5, 1.5);
    const double eta = 0.7;
    CHECK_REL(q_laplace(p, 0.0, eta), (0.5 * std::pow(eta, -0.6) + 0.5 * std::pow(eta, -0.2)) / 1.5, 1e-14);
    CHECK_REL(q_laplace(p, 0.5, eta), p.exponent(eta) / (1.5 * eta) * std::exp(-p.exponent(eta) * 0.5 / 1.5), 1e-14);
    CHECK_THROWS_AS(q_laplace(p, -1.0, eta), InvalidArgument);
}

TEST_CASE("random-time moments")
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5, 1.3);
    const double t = 2.0;
    const double a = 0.5 * std::pow(t, 0.4) / 0.5;
    CHECK_REL(q_moment(p, 1, t), 1.3 * std::pow(t, 0.8) / 0.5 * mittag_leffler(0.4, 1.8, -a), 1e-12);
    // Single order: E T^k = lambda^k t^(nu k) k! / Gamma(nu k + 1).
    const auto s = DistributedOrder::make(0.3, 0.7, 0.0, 2.0);
    CHECK_REL(q_moment(s, 3, t), 8.0 * std::pow(t, 2.1) * 6.0 / gamma_fn(3.1), 1e-12);
}

TEST_CASE("relaxation routes agree")
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    for (double kappa : {0.3, 1.0, 2.5})
        for (double t : {0.2, 1.0}) {
            double s = relaxation_series(p, kappa, t), i = relaxation_invert(p, kappa, t);
            CHECK_ABS(s, i, 1e-10);
            CHECK_ABS(relaxation_series_unpaired(p, kappa, t), s, 1e-9);
        }
    // Outer terms grow like (n1 t^(nu2-nu1) / n2)^r; the series reports the loss
    // and the dispatcher falls back to inversion.
    CHECK_THROWS_AS(relaxation_series(p, 1.0, 5.0), CancellationError);
    CHECK_ABS(relaxation(p, 1.0, 5.0), relaxation_invert(p, 1.0, 5.0), 1e-14);
    CHECK(relaxation(p, 0.0, 1.0) == 1.0);
    // Single order: E_nu(-kappa t^nu).
    const auto s = DistributedOrder::make(0.3, 0.7, 0.0);
    CHECK_REL(relaxation(s, 1.5, 2.0), mittag_leffler(0.7, 1.0, -1.5 * std::pow(2.0, 0.7)), 1e-12);
}

TEST_CASE("random-time sampler")
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    SamplePlan plan;
    plan.count = 20000;
    plan.seed = 5;
    std::vector<double> a = sample_random_time(p, 1.0, plan, Exec::serial);
    std::vector<double> b = sample_random_time(p, 1.0, plan, Exec::parallel);
    CHECK(a == b);
    double s1 = 0.0, s2 = 0.0;
    for (double x : a) {
        CHECK(x >= 0.0);
        s1 += x;
        s2 += x * x;
    }
    const double n = static_cast<double>(a.size());
    const double mean = s1 / n, se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::fabs(mean - q_moment(p, 1, 1.0)) <= 3.0 * se);
    plan.count = 0;
    CHECK_THROWS_AS(sample_random_time(p, 1.0, plan), InvalidArgument);
}

TEST_CASE("squared operator identity")
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    CHECK(q_equation_residual(p, 1.0, 1.0) < 1e-12);
    CHECK(q_equation_residual(p, 5.0, 0.3) < 1e-12);
    auto w = squared_operator_weights(p);
    CHECK_REL(w[0] + w[1] + w[2], 1.0, 1e-15);
}

#pragma once

#include "dofpp/laplace.hpp"
#include "dofpp/parallel.hpp"
#include "dofpp/sampling.hpp"
#include "dofpp/series.hpp"

#include <array>
#include <vector>

namespace dofpp {

// Two-point order density n(nu) = n1 delta(nu - nu1) + n2 delta(nu - nu2)
// with rate lambda.
struct DistributedOrder {
    double nu1 = 0.4;
    double nu2 = 0.8;
    double n1 = 0.5;
    double n2 = 0.5;
    double lambda = 1.0;

    // n2 = 1 - n1. Equal orders collapse to the single-order process
    // (n1 = 0 with a placeholder nu1 = nu2 / 2 that no formula reads).
    static DistributedOrder make(double nu1, double nu2, double n1, double lambda = 1.0);

    void validate() const;

    // n2 = 0 is the single-order process at nu1; it is rewritten with the
    // order in the nu2 slot so every formula can divide by n2.
    DistributedOrder reduced() const;

    double delta() const { return nu2 - nu1; }
    // Laplace exponent S(eta) = n1 eta^nu1 + n2 eta^nu2.
    double exponent(double eta) const;
    cplx exponent(cplx eta) const;
};

enum class QRoute { automatic, series, laplace_inversion, integral };

struct QValue {
    double value = 0.0;
    QRoute route = QRoute::automatic;
};

// Density q(y, t) of the random time T(t), y >= 0.
double q_laplace(const DistributedOrder& p, double y, double eta);
double q_series(const DistributedOrder& p, double y, double t, const SeriesControl& ctl = {});
double q_invert(const DistributedOrder& p, double y, double t);
double q_integral(const DistributedOrder& p, double y, double t);
QValue q_density(const DistributedOrder& p, double y, double t, QRoute route = QRoute::automatic,
                 const SeriesControl& ctl = {});

// q for quadrature nodes: the automatic routes, with q taken as zero past
// y_negligible.
double q_node(const DistributedOrder& p, double y, double t, double y_negligible);

// Range of T(t) for quadratures over y. P(T > y_negligible) <= 1e-16 by the
// best Markov bound over moments up to order 256; y_top also stops at the edge of
// the support when nu2 = 1.
struct QRange {
    double y_top = 0.0;
    double y_negligible = 0.0;
};
QRange q_range(const DistributedOrder& p, double t);

// E[T(t)^k].
double q_moment(const DistributedOrder& p, int k, double t, const SeriesControl& ctl = {});

// E[exp(-s T(t))]; with kappa = lambda s this is the inverse transform of
// (S(eta)/eta) / (kappa + S(eta)). Shared by the pgf, the survival function
// and the Fourier transform of the diffusion.
double random_time_laplace(const DistributedOrder& p, double s, double t, const SeriesControl& ctl = {});

// Relaxation function R(kappa, t) = L^-1[(S/eta)/(kappa + S)](t) by the paired GML series.
double relaxation_series(const DistributedOrder& p, double kappa, double t, const SeriesControl& ctl = {});
// The same function from the two unpaired GML sums, for cross-checks.
double relaxation_series_unpaired(const DistributedOrder& p, double kappa, double t,
                                  const SeriesControl& ctl = {});
double relaxation_invert(const DistributedOrder& p, double kappa, double t);
double relaxation(const DistributedOrder& p, double kappa, double t, const SeriesControl& ctl = {});

// Horizon with P(T(t) > s_max) < 1e-4.
double default_horizon(const DistributedOrder& p, double t);

// One draw of T(t) per call: first passage of A(s) = A1(s) + A2(s) through t,
// stepping s on a grid of h = s_max / path_grid and bisecting inside the
// crossing step.
class RandomTimeSampler {
public:
    RandomTimeSampler(const DistributedOrder& p, double t, const SamplePlan& plan);
    double operator()(Rng& rng) const;
    double horizon() const { return s_max_; }

private:
    DistributedOrder p_;
    double t_ = 1.0;
    double s_max_ = 0.0;
    double h_ = 0.0;
    long max_steps_ = 0;
    double c1_ = 0.0, c2_ = 0.0;
};

std::vector<double> sample_random_time(const DistributedOrder& p, double t, const SamplePlan& plan,
                                       Exec exec = Exec::parallel);

// Transform-domain residual of the squared operator equation (lambda = 1).
double q_equation_residual(const DistributedOrder& p, double theta, double eta);

// Weights {n1^2, n2^2, 2 n1 n2} of the orders {2 nu1, 2 nu2, nu1 + nu2}.
std::array<double, 3> squared_operator_weights(const DistributedOrder& p);

} // namespace dofpp

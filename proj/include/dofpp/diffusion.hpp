#pragma once

#include "dofpp/laplace.hpp"
#include "dofpp/parallel.hpp"
#include "dofpp/randomtime.hpp"

#include <string>
#include <vector>

namespace dofpp {

// A point (x, t) of the diffusion B(T(t)). Brownian variance is 2 per unit
// time and the rate is fixed at lambda = 1.
struct DiffusionPoint {
    double x = 0.0;
    double t = 1.0;
    DistributedOrder p;

    void validate() const;
};

void require_unit_rate(const DistributedOrder& p);

// v(., t) for one t: q(y, t) is tabulated once on Gauss-Kronrod nodes in
// s = sqrt(y), after which each x costs one weighted sum.
class DiffusionDensity {
public:
    DiffusionDensity(const DistributedOrder& p, double t, Exec exec = Exec::parallel);

    double operator()(double x) const;
    // Kronrod minus Gauss estimate at x.
    double error(double x) const;
    std::vector<double> on_grid(const std::vector<double>& xs, Exec exec = Exec::parallel) const;

    double t() const { return t_; }
    std::size_t nodes() const { return s_.size(); }

private:
    double sum(double x, bool gauss) const;

    double t_ = 1.0;
    bool heat_kernel_ = false;
    std::vector<double> s_, wk_, wg_, q_;
};

double density(const DiffusionPoint& pt, Exec exec = Exec::parallel);

// v(x, t) by Talbot inversion of sqrt(S) exp(-|x| sqrt(S)) / (2 eta).
double density_invert(const DistributedOrder& p, double x, double t);

// V(theta, t) = E exp(-theta^2 T(t)).
double fourier_transform(double theta, double t, const DistributedOrder& p, const SeriesControl& ctl = {});

// E B(T(t))^k; zero for odd k.
double moment(const DistributedOrder& p, int k, double t, const SeriesControl& ctl = {});
// (2 t^nu2 / n2) E_{nu2-nu1, nu2+1}(-n1 t^(nu2-nu1) / n2).
double second_moment_closed_form(const DistributedOrder& p, double t, const SeriesControl& ctl = {});

struct RegimeReport {
    // Exponents of E B^2 and E T^2 at small and large t.
    double diffusion_small_exponent = 0.0;
    double diffusion_large_exponent = 0.0;
    double squared_small_exponent = 0.0;
    double squared_large_exponent = 0.0;
    double diffusion_small_prefactor = 0.0;
    double diffusion_large_prefactor = 0.0;
    double squared_small_prefactor = 0.0;
    double squared_large_prefactor = 0.0;
    std::string label;
};

RegimeReport regime_report(const DistributedOrder& p);

// d log f / d log t by a central difference of half-width h in log t.
struct RegimeSlopes {
    double diffusion_small = 0.0;
    double diffusion_large = 0.0;
    double squared_small = 0.0;
    double squared_large = 0.0;
};

RegimeSlopes regime_slopes(const DistributedOrder& p, double t_small, double t_large, double h = 0.05);

// |n1 D^nu1 V + n2 D^nu2 V + theta^2 V| at t on a uniform grid.
double diffusion_equation_residual(const DistributedOrder& p, double theta, double t, int intervals);

} // namespace dofpp

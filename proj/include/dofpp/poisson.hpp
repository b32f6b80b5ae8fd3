#pragma once

#include "dofpp/randomtime.hpp"

#include <utility>
#include <vector>

namespace dofpp {

enum class PmfRoute { automatic, mixture_integral, laplace_inversion, series_k0 };

const char* route_name(PmfRoute r);

struct PmfRequest {
    DistributedOrder p;
    int k = 0;
    double t = 1.0;
    PmfRoute route = PmfRoute::automatic;

    void validate() const;
};

struct PgfRequest {
    DistributedOrder p;
    double u = 0.5;
    double t = 1.0;

    void validate() const;
};

struct PmfValue {
    double value = 0.0;
    PmfRoute route = PmfRoute::automatic;
};

// Pr{N(t) = k}. The automatic route inverts the transform
// lambda^k (S/eta) / (lambda + S)^(k+1) and falls back to the mixture integral.
PmfValue pmf(const PmfRequest& req, const SeriesControl& ctl = {});

// pmf(0..k_max) by the mixture integral, sharing density evaluations across k.
std::vector<double> pmf_mixture(const DistributedOrder& p, int k_max, double t);

// Chebyshev cutoff: Pr{N(t) > K} <= tail from the first two factorial moments.
int pmf_cutoff(const DistributedOrder& p, double t, double tail);

double pgf(const PgfRequest& req, const SeriesControl& ctl = {});

// |n1 D^nu1 G + n2 D^nu2 G + lambda (1 - u) G| at t, Caputo derivatives by
// the L1 scheme on `intervals` uniform steps.
double pgf_equation_residual(const DistributedOrder& p, double u, double t, int intervals);

double factorial_moment(const DistributedOrder& p, int k, double t, const SeriesControl& ctl = {});

double interarrival_density(const DistributedOrder& p, double t, const SeriesControl& ctl = {});
double interarrival_series(const DistributedOrder& p, double t, const SeriesControl& ctl = {});
double interarrival_invert(const DistributedOrder& p, double t);

double survival(const DistributedOrder& p, double t, const SeriesControl& ctl = {});
// Residual of n1 D^nu1 Psi + n2 D^nu2 Psi = -lambda Psi at t.
double survival_equation_residual(const DistributedOrder& p, double t, int intervals);

double waiting_time_laplace(const DistributedOrder& p, int k, double eta);
// Density of the k-th event time, by inversion of waiting_time_laplace.
double waiting_time_density(const DistributedOrder& p, int k, double t);

double renewal_function(const DistributedOrder& p, double t, const SeriesControl& ctl = {});

// Ratios of each quantity to its leading small-t or large-t form; all tend to 1.
struct AsymptoticRatios {
    double interarrival_small = 0.0;
    double interarrival_large = 0.0;
    double survival_small = 0.0;
    double survival_large = 0.0;
    double renewal_small = 0.0;
    double renewal_large = 0.0;
};

double interarrival_small_t_ratio(const DistributedOrder& p, double t);
double interarrival_large_t_ratio(const DistributedOrder& p, double t);
double survival_small_t_ratio(const DistributedOrder& p, double t);
double survival_large_t_ratio(const DistributedOrder& p, double t);
double renewal_small_t_ratio(const DistributedOrder& p, double t);
double renewal_large_t_ratio(const DistributedOrder& p, double t);
AsymptoticRatios asymptotic_ratios(const DistributedOrder& p, double t_small, double t_large);

enum class InterpolationRoute { mixture, laplace_inversion };

// nu2 = 1: one fractional order plus the first derivative.
double interpolated_pmf(const DistributedOrder& p, int k, double t,
                        InterpolationRoute route = InterpolationRoute::laplace_inversion,
                        const SeriesControl& ctl = {});
// Mean of the nu2 = 1 process, (lambda t / n2) E_{1-nu,2}(-n1 t^(1-nu) / n2).
double interpolated_mean(const DistributedOrder& p, double t, const SeriesControl& ctl = {});

// nu2 = 1: (pgf, interarrival density) as sums of Kummer functions.
std::pair<double, double> kummer_forms(const DistributedOrder& p, double u, double t,
                                       const SeriesControl& ctl = {});

// Samples of N(T(t)) with a unit-rate Poisson count given T(t).
std::vector<long> simulate_counts(const DistributedOrder& p, double t, const SamplePlan& plan,
                                  Exec exec = Exec::parallel);

} // namespace dofpp

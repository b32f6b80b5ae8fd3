// dofpp: tables of the distributed-order Poisson process and diffusion.
// Exit codes: 0 success, 1 validate found failing checks, 2 bad arguments,
// 3 numerical failure.

#include "table.hpp"
#include "validate.hpp"

#include "dofpp/config.hpp"
#include "dofpp/diffusion.hpp"
#include "dofpp/error.hpp"
#include "dofpp/parallel.hpp"
#include "dofpp/poisson.hpp"
#include "dofpp/randomtime.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using namespace dofpp;
using cli::Table;

struct Common {
    double nu1 = 0.4;
    double nu2 = 0.8;
    double n1 = 0.5;
    double lambda = 1.0;
    std::vector<double> t;
    std::string t_grid;
    double tol = 0.0;
    std::string format;
    std::uint64_t seed = 20240601;
    int threads = 0;
    std::string config;
};

// "lo:hi:n" is linear, "lo:hi:n:log" logarithmic; both include the ends.
std::vector<double> parse_grid(const std::string& spec, const std::string& flag)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t c = spec.find(':', start);
        parts.push_back(spec.substr(start, c == std::string::npos ? std::string::npos : c - start));
        if (c == std::string::npos) break;
        start = c + 1;
    }
    const std::string usage = flag + " expects lo:hi:n or lo:hi:n:log";
    require(parts.size() == 3 || (parts.size() == 4 && parts[3] == "log"), usage);
    double lo = 0.0, hi = 0.0;
    long n = 0;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[0], &used);
        require(used == parts[0].size(), usage);
        hi = std::stod(parts[1], &used);
        require(used == parts[1].size(), usage);
        n = std::stol(parts[2], &used);
        require(used == parts[2].size(), usage);
    } catch (const std::logic_error&) {
        throw InvalidArgument(usage);
    }
    require(n >= 1 && n <= 1000000, flag + " requires 1 <= n <= 1e6");
    require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, flag + " requires lo <= hi");
    const bool log = parts.size() == 4;
    require(!log || lo > 0.0, flag + " log spacing requires lo > 0");
    std::vector<double> out(n);
    for (long i = 0; i < n; ++i) {
        double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        out[i] = log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
    }
    out.back() = hi;
    out.front() = lo;
    return out;
}

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--nu1", c.nu1, "lower order")->capture_default_str();
    sub->add_option("--nu2", c.nu2, "upper order")->capture_default_str();
    sub->add_option("--n1", c.n1, "weight of the lower order; n2 = 1 - n1")->capture_default_str();
    sub->add_option("--lambda", c.lambda, "rate")->capture_default_str();
    auto* t = sub->add_option("--t", c.t, "times (comma separated or repeated); default 1")->delimiter(',');
    auto* g = sub->add_option("--t-grid", c.t_grid, "time grid lo:hi:n or lo:hi:n:log");
    t->excludes(g);
    sub->add_option("--tol", c.tol, "series relative tolerance");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sub->add_option("--threads", c.threads, "worker thread cap; 0 uses the OpenMP default")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--config", c.config, "key = value settings file; flags override it");
}

struct Context {
    DistributedOrder p;
    std::vector<double> ts;
    SeriesControl ctl;
    OutputFormat format = OutputFormat::csv;
};

Context prepare(const Common& c, bool format_default_json = false)
{
    Tuning tu = c.config.empty() ? Tuning{} : load_tuning(c.config);
    if (c.tol != 0.0) tu.series.rel_tol = c.tol;
    if (!c.format.empty())
        tu.format = c.format == "json" ? OutputFormat::json : OutputFormat::csv;
    else if (format_default_json)
        tu.format = OutputFormat::json;
    set_tuning(tu);
    set_max_threads(c.threads);

    Context ctx;
    ctx.p = DistributedOrder::make(c.nu1, c.nu2, c.n1, c.lambda);
    ctx.p.validate();
    ctx.ts = c.t_grid.empty() ? (c.t.empty() ? std::vector<double>{1.0} : c.t) : parse_grid(c.t_grid, "--t-grid");
    for (double t : ctx.ts) require(t > 0.0 && std::isfinite(t), "times require t > 0");
    ctx.ctl = tu.series;
    ctx.format = tu.format;
    return ctx;
}

PmfRoute parse_route(const std::string& s)
{
    static const std::map<std::string, PmfRoute> routes = {{"auto", PmfRoute::automatic},
                                                           {"mixture", PmfRoute::mixture_integral},
                                                           {"inversion", PmfRoute::laplace_inversion},
                                                           {"series", PmfRoute::series_k0}};
    return routes.at(s);
}

Table cmd_pmf(const Context& ctx, int k_max, const std::string& route)
{
    require(k_max >= 0, "pmf requires k-max >= 0");
    const PmfRoute r = parse_route(route);
    require(r != PmfRoute::series_k0 || k_max == 0, "series route requires k-max = 0");
    Table out({"t", "k", "pmf", "route"});
    for (double t : ctx.ts) {
        if (r == PmfRoute::mixture_integral) {
            std::vector<double> v = pmf_mixture(ctx.p, k_max, t);
            for (int k = 0; k <= k_max; ++k) out.add({t, long{k}, v[k], std::string(route_name(r))});
            continue;
        }
        for (int k = 0; k <= k_max; ++k) {
            PmfValue v = pmf({ctx.p, k, t, r}, ctx.ctl);
            out.add({t, long{k}, v.value, std::string(route_name(v.route))});
        }
    }
    return out;
}

Table cmd_pgf(const Context& ctx, const std::vector<double>& us)
{
    Table out({"t", "u", "pgf"});
    for (double t : ctx.ts)
        for (double u : us) out.add({t, u, pgf({ctx.p, u, t}, ctx.ctl)});
    return out;
}

Table cmd_moments(const Context& ctx, int k_max)
{
    require(k_max >= 1, "moments requires k-max >= 1");
    Table out({"t", "k", "factorial_moment", "random_time_moment"});
    for (double t : ctx.ts)
        for (int k = 1; k <= k_max; ++k)
            out.add({t, long{k}, factorial_moment(ctx.p, k, t, ctx.ctl), q_moment(ctx.p, k, t, ctx.ctl)});
    return out;
}

Table cmd_renewal(const Context& ctx)
{
    Table out({"t", "f1", "survival", "renewal", "small_t_ratio", "large_t_ratio"});
    for (double t : ctx.ts)
        out.add({t, interarrival_density(ctx.p, t, ctx.ctl), survival(ctx.p, t, ctx.ctl),
                 renewal_function(ctx.p, t, ctx.ctl), survival_small_t_ratio(ctx.p, t),
                 survival_large_t_ratio(ctx.p, t)});
    return out;
}

Table cmd_diffusion(const Context& ctx, const std::string& x_grid)
{
    require_unit_rate(ctx.p);
    const std::vector<double> xs = parse_grid(x_grid, "--x-grid");
    const std::string regime = regime_report(ctx.p).label;
    Table out({"t", "x", "density", "moment2", "regime"});
    for (double t : ctx.ts) {
        DiffusionDensity v(ctx.p, t);
        const std::vector<double> vals = v.on_grid(xs);
        const double m2 = moment(ctx.p, 2, t, ctx.ctl);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!std::isfinite(vals[i]) || v.error(xs[i]) > 1e-6 * std::max(vals[i], 1e-6))
                throw QuadratureError("diffusion density: subordination quadrature did not converge");
            out.add({t, xs[i], vals[i], m2, regime});
        }
    }
    return out;
}

struct Summary {
    double mean = 0.0, mean_se = 0.0, second = 0.0, second_se = 0.0;
};

template <class V>
Summary summarize(const V& xs)
{
    const double n = static_cast<double>(xs.size());
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (auto x : xs) {
        double d = static_cast<double>(x);
        s1 += d;
        s2 += d * d;
        s4 += d * d * d * d;
    }
    Summary s;
    s.mean = s1 / n;
    s.second = s2 / n;
    if (n > 1) {
        s.mean_se = std::sqrt(std::max(s.second - s.mean * s.mean, 0.0) * n / (n - 1) / n);
        s.second_se = std::sqrt(std::max(s4 / n - s.second * s.second, 0.0) * n / (n - 1) / n);
    }
    return s;
}

Table cmd_simulate(const Context& ctx, long samples, const std::string& process, std::uint64_t seed)
{
    require(samples >= 1, "simulate requires samples >= 1");
    if (process == "diffusion") require_unit_rate(ctx.p);
    SamplePlan plan;
    plan.seed = seed;
    plan.count = static_cast<std::size_t>(samples);
    Table out({"t", "process", "statistic", "empirical", "std_error", "analytic", "samples"});
    for (double t : ctx.ts) {
        Summary s;
        double m1 = 0.0, m2 = 0.0;
        if (process == "poisson") {
            s = summarize(simulate_counts(ctx.p, t, plan));
            m1 = factorial_moment(ctx.p, 1, t, ctx.ctl);
            m2 = factorial_moment(ctx.p, 2, t, ctx.ctl) + m1;
        } else if (process == "time") {
            s = summarize(sample_random_time(ctx.p, t, plan));
            m1 = q_moment(ctx.p, 1, t, ctx.ctl);
            m2 = q_moment(ctx.p, 2, t, ctx.ctl);
        } else {
            // B(T) = sqrt(2 T) Z: unit Brownian variance is 2 per unit time.
            std::vector<double> x = sample_random_time(ctx.p, t, plan);
            std::vector<double> z =
                generate_blocks<double>(x.size(), seed ^ 0xd1b54a32d192ed03ull, standard_normal, Exec::parallel);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sqrt(2.0 * x[i]) * z[i];
            s = summarize(x);
            m1 = 0.0;
            m2 = moment(ctx.p, 2, t, ctx.ctl);
        }
        out.add({t, process, std::string("mean"), s.mean, s.mean_se, m1, samples});
        out.add({t, process, std::string("second_moment"), s.second, s.second_se, m2, samples});
    }
    return out;
}

Table cmd_validate(bool quick, const std::string& fault, int& failed)
{
    validate::Options opt;
    opt.quick = quick;
    opt.fault = fault;
    Table out({"criterion", "group", "check", "measured", "limit", "passed", "note"});
    failed = 0;
    for (const auto& c : validate::run_all(opt)) {
        failed += !c.passed;
        out.add({long{c.criterion}, c.group, c.name, c.measured, c.limit, c.passed, c.note});
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Distributed-order fractional Poisson process and diffusion"};
    app.require_subcommand(1);
    Common common;

    int k_max = 10;
    std::string route = "auto";
    auto* s_pmf = app.add_subcommand("pmf", "Pr{N(t) = k} for k = 0..k-max");
    add_common(s_pmf, common);
    s_pmf->add_option("--k-max", k_max, "largest k")->capture_default_str();
    s_pmf->add_option("--route", route, "auto, mixture, inversion or series (k-max 0 only)")
        ->check(CLI::IsMember({"auto", "mixture", "inversion", "series"}))
        ->capture_default_str();

    std::vector<double> us = {0.5};
    auto* s_pgf = app.add_subcommand("pgf", "probability generating function E u^N(t)");
    add_common(s_pgf, common);
    s_pgf->add_option("--u", us, "pgf arguments in [0, 1]")->delimiter(',')->check(CLI::Range(0.0, 1.0));

    int moment_max = 4;
    auto* s_mom = app.add_subcommand("moments", "factorial moments of N(t) and moments of T(t)");
    add_common(s_mom, common);
    s_mom->add_option("--k-max", moment_max, "largest order")->capture_default_str();

    auto* s_ren = app.add_subcommand("renewal", "interarrival density, survival, renewal function");
    add_common(s_ren, common);

    std::string x_grid = "-3:3:13";
    auto* s_dif = app.add_subcommand("diffusion", "density and second moment of B(T(t)); lambda = 1");
    add_common(s_dif, common);
    s_dif->add_option("--x-grid", x_grid, "x grid lo:hi:n")->capture_default_str();

    long samples = 10000;
    std::string process = "poisson";
    auto* s_sim = app.add_subcommand("simulate", "Monte Carlo mean and second moment against analytic values");
    add_common(s_sim, common);
    s_sim->add_option("--samples", samples, "sample count")->capture_default_str();
    s_sim->add_option("--process", process, "poisson, time or diffusion")
        ->check(CLI::IsMember({"poisson", "time", "diffusion"}))
        ->capture_default_str();

    bool quick = false;
    std::string fault;
    auto* s_val = app.add_subcommand("validate", "run the acceptance checks; exit 1 if any fails");
    add_common(s_val, common);
    s_val->add_flag("--quick", quick, "reduced grids");
    s_val->add_option("--inject-fault", fault, "")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        int failed = 0;
        const bool is_validate = s_val->parsed();
        Context ctx = prepare(common, is_validate);
        Table out({});
        if (s_pmf->parsed())
            out = cmd_pmf(ctx, k_max, route);
        else if (s_pgf->parsed())
            out = cmd_pgf(ctx, us);
        else if (s_mom->parsed())
            out = cmd_moments(ctx, moment_max);
        else if (s_ren->parsed())
            out = cmd_renewal(ctx);
        else if (s_dif->parsed())
            out = cmd_diffusion(ctx, x_grid);
        else if (s_sim->parsed())
            out = cmd_simulate(ctx, samples, process, common.seed);
        else
            out = cmd_validate(quick, fault, failed);
        cli::write(std::cout, out, ctx.format);
        std::cout.flush();
        if (is_validate) {
            std::cerr << fmt::format("validate: {} of {} checks failed\n", failed, out.rows.size());
            return failed ? 1 : 0;
        }
        return 0;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

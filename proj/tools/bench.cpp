// Serial reference vs OpenMP path for the parallel kernels.
// Results are identical on both paths; only the timings differ.

#include "dofpp/diffusion.hpp"
#include "dofpp/poisson.hpp"
#include "dofpp/randomtime.hpp"
#include "dofpp/stable.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace dofpp;

Exec exec_of(const benchmark::State& s)
{
    return s.range(0) ? Exec::parallel : Exec::serial;
}

void label(benchmark::State& s)
{
    s.SetLabel(s.range(0) ? "parallel" : "serial");
}

void BM_StableSample(benchmark::State& s)
{
    SamplePlan plan;
    plan.count = 200000;
    const StableParams p = StableParams::from_zeta(0.7, 1.0);
    for (auto _ : s) benchmark::DoNotOptimize(stable_sample(p, plan, exec_of(s)));
    s.SetItemsProcessed(s.iterations() * static_cast<long>(plan.count));
    label(s);
}

void BM_RandomTimeSample(benchmark::State& s)
{
    SamplePlan plan;
    plan.count = 20000;
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    for (auto _ : s) benchmark::DoNotOptimize(sample_random_time(p, 1.0, plan, exec_of(s)));
    s.SetItemsProcessed(s.iterations() * static_cast<long>(plan.count));
    label(s);
}

void BM_SimulateCounts(benchmark::State& s)
{
    SamplePlan plan;
    plan.count = 20000;
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    for (auto _ : s) benchmark::DoNotOptimize(simulate_counts(p, 1.0, plan, exec_of(s)));
    s.SetItemsProcessed(s.iterations() * static_cast<long>(plan.count));
    label(s);
}

void BM_DensityGrid(benchmark::State& s)
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    const QRange r = q_range(p, 1.0);
    std::vector<double> ys(512);
    for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = r.y_top * (i + 0.5) / ys.size();
    for (auto _ : s)
        benchmark::DoNotOptimize(
            evaluate_grid(ys, [&](double y) { return q_node(p, y, 1.0, r.y_negligible); }, exec_of(s)));
    s.SetItemsProcessed(s.iterations() * static_cast<long>(ys.size()));
    label(s);
}

void BM_DiffusionTable(benchmark::State& s)
{
    const auto p = DistributedOrder::make(0.4, 0.8, 0.5);
    std::vector<double> xs(2001);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -5.0 + 0.005 * i;
    for (auto _ : s) {
        DiffusionDensity v(p, 1.0, exec_of(s));
        benchmark::DoNotOptimize(v.on_grid(xs, exec_of(s)));
    }
    label(s);
}

} // namespace

BENCHMARK(BM_StableSample)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomTimeSample)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateCounts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiffusionTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

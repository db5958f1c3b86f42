#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "tailboot/bootstrap.hpp"
#include "tailboot/limit_laws.hpp"
#include "tailboot/rng.hpp"
#include "tailboot/sim_harness.hpp"

using namespace tailboot;

namespace {

Sample pareto_sample(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> values(n);
    for (auto& v : values) v = 1.0 / rng.uniform01();
    return Sample(std::move(values));
}

void BM_PhiloxStream(benchmark::State& state) {
    Rng rng(1);
    std::uint64_t acc = 0;
    for (auto _ : state) acc ^= rng();
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_PhiloxStream);

void BM_NormalDraw(benchmark::State& state) {
    Rng rng(1);
    double acc = 0.0;
    for (auto _ : state) acc += rng.normal();
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_NormalDraw);

void BM_FitTail(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Sample s = pareto_sample(n, 7);
    const std::size_t k = n / 10;
    for (auto _ : state) {
        TailFit fit;
        try_fit_tail(s, k, fit);
        benchmark::DoNotOptimize(fit.gamma);
    }
}
BENCHMARK(BM_FitTail)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_Resample(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Sample s = pareto_sample(n, 9);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const Sample rs = resample(s, seed++);
        benchmark::DoNotOptimize(rs.order_stat(1));
    }
}
BENCHMARK(BM_Resample)->Arg(1000)->Arg(10000);

void BM_BootstrapTailProb(benchmark::State& state) {
    const Sample s = pareto_sample(1000, 11);
    ResamplePlan plan;
    plan.replicates = static_cast<std::size_t>(state.range(0));
    plan.statistic = {Statistic::TailProb, 50.0};
    for (auto _ : state) {
        plan.master_seed++;
        const auto boot = bootstrap_distribution(s, 100, plan, 1);
        benchmark::DoNotOptimize(boot.values.front());
    }
}
BENCHMARK(BM_BootstrapTailProb)->Arg(100)->Arg(500);

void BM_WienerPath(benchmark::State& state) {
    const auto grid = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const auto path = sample_wiener(grid, seed++);
        benchmark::DoNotOptimize(path.values.back());
    }
}
BENCHMARK(BM_WienerPath)->Arg(4096)->Arg(32768);

void BM_LimitFunctionals(benchmark::State& state) {
    const auto grid_size = static_cast<std::size_t>(state.range(0));
    std::vector<double> grid(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) {
        grid[j] = static_cast<double>(j + 1) / static_cast<double>(grid_size);
    }
    const LimitFunctionalEvaluator eval(-0.25, grid);
    const auto path = sample_wiener(grid_size, 3);
    for (auto _ : state) {
        const auto f = eval.evaluate(path);
        benchmark::DoNotOptimize(f.Gamma);
    }
}
BENCHMARK(BM_LimitFunctionals)->Arg(4096)->Arg(32768);

void BM_CoverageTrial(benchmark::State& state) {
    StudyConfig cfg;
    cfg.model = ModelSpec::frechet(2);
    cfg.n = 500;
    cfg.np_n = 0.5;
    cfg.k_grid = {50};
    cfg.replicates = 100;
    cfg.mc_reps = 1;
    cfg.level = 0.95;
    cfg.methods = {CiMethod::EfronPercentile};
    for (auto _ : state) {
        cfg.master_seed++;
        const auto report = coverage_study(cfg);
        benchmark::DoNotOptimize(report.cells.front().coverage);
    }
}
BENCHMARK(BM_CoverageTrial);

}  // namespace

BENCHMARK_MAIN();

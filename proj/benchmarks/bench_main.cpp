// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "isaclab/oracle.hpp"
#include "isaclab/stochastic.hpp"

namespace {

using namespace isaclab;

const ScenarioConfig kConfig;
const SsjbSplit kSsjb{0.5, std::sqrt(0.5)};
const SlbSplit kSlb{0.5, 0.2, 0.2};

void BM_sample_realization(benchmark::State& state) {
    std::uint64_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_realization(kConfig, 1, i++));
}
BENCHMARK(BM_sample_realization);

void BM_crb_theta_closed_ssjb(benchmark::State& state) {
    const ChannelRealization real = sample_realization(kConfig, 1, 0);
    const RtkStats stats = rtk(real.h, real.theta);
    for (auto _ : state)
        benchmark::DoNotOptimize(crb_theta_ssjb(stats, real.theta, kSsjb, kConfig));
}
BENCHMARK(BM_crb_theta_closed_ssjb);

void BM_crb_theta_generic(benchmark::State& state) {
    const ChannelRealization real = sample_realization(kConfig, 1, 0);
    const SteeringSet s = steering(kConfig, real.theta, real.phi);
    const CovarianceMatrix rx = ssjb_covariance(ssjb_basis(real.h, s.a), kSsjb, kConfig);
    for (auto _ : state)
        benchmark::DoNotOptimize(crb_theta_generic(rx, real.theta, kConfig));
}
BENCHMARK(BM_crb_theta_generic);

void BM_realization_crb_bs(benchmark::State& state) {
    std::uint64_t i = 0;
    for (auto _ : state) {
        const ChannelRealization real = sample_realization(kConfig, 1, i++);
        benchmark::DoNotOptimize(realization_crb_bs(real, kSsjb, kConfig));
    }
}
BENCHMARK(BM_realization_crb_bs);

void BM_ccdf_slb_curve(benchmark::State& state) {
    QuadratureBudget budget;
    budget.qmc_points = static_cast<int>(state.range(0));
    std::vector<double> grid(20);
    for (int i = 0; i < 20; ++i) grid[i] = 1e-3 * std::pow(10.0, i / 4.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            ccdf_bs_slb_curve(grid, kSlb, kConfig, CurveKind::approx, budget));
}
BENCHMARK(BM_ccdf_slb_curve)->Arg(1 << 12)->Arg(1 << 16);

void BM_ergodic_crb_ssjb(benchmark::State& state) {
    QuadratureBudget budget;
    budget.rel_tol = 1e-7;
    for (auto _ : state)
        benchmark::DoNotOptimize(ergodic_crb_ssjb(kSsjb, kConfig, budget));
}
BENCHMARK(BM_ergodic_crb_ssjb);

void BM_rates_slb(benchmark::State& state) {
    QuadratureBudget budget;
    budget.rel_tol = 1e-7;
    for (auto _ : state)
        benchmark::DoNotOptimize(rates_slb(kSlb, kConfig, budget));
}
BENCHMARK(BM_rates_slb);

void BM_mc_ccdf_bs(benchmark::State& state) {
    const std::vector<double> grid = {0.05, 0.1, 0.2, 0.5, 1.0};
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto metric = [](const ChannelRealization& real) {
            return realization_crb_bs(real, kSsjb, kConfig);
        };
        benchmark::DoNotOptimize(mc_ccdf(metric, kConfig, grid, n, 1));
    }
}
BENCHMARK(BM_mc_ccdf_bs)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

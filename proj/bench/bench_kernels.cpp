#include "dcurve/curves.hpp"
#include "dcurve/kernels.hpp"
#include "dcurve/resampling.hpp"

#include <benchmark/benchmark.h>

namespace {

dcurve::PredictionSet cohort(std::size_t n) {
    dcurve::SyntheticSpec spec;
    spec.n = n;
    spec.seed = 11;
    spec.risk_distribution = dcurve::RiskDistribution::beta(2, 5);
    return dcurve::generate_synthetic(spec).reported;
}

const dcurve::ThresholdGrid fine_grid(0.001, 0.999, 0.001);

void BM_sweep_serial(benchmark::State& state) {
    const auto data = cohort(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dcurve::sweep_serial(data, fine_grid.points()));
    state.SetItemsProcessed(state.iterations() * state.range(0) *
                            static_cast<std::int64_t>(fine_grid.points().size()));
}

void BM_sweep_parallel(benchmark::State& state) {
    const auto data = cohort(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dcurve::sweep_parallel(data, fine_grid.points()));
    state.SetItemsProcessed(state.iterations() * state.range(0) *
                            static_cast<std::int64_t>(fine_grid.points().size()));
}

void BM_bootstrap_serial(benchmark::State& state) {
    const auto data = cohort(static_cast<std::size_t>(state.range(0)));
    const auto grid = dcurve::ThresholdGrid::default_grid();
    dcurve::BandSpec spec;
    spec.replicates = 200;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dcurve::bootstrap_replicates_serial(data, grid, spec));
    }
}

void BM_bootstrap_parallel(benchmark::State& state) {
    const auto data = cohort(static_cast<std::size_t>(state.range(0)));
    const auto grid = dcurve::ThresholdGrid::default_grid();
    dcurve::BandSpec spec;
    spec.replicates = 200;
    for (auto _ : state) benchmark::DoNotOptimize(dcurve::bootstrap_replicates(data, grid, spec));
}

} // namespace

BENCHMARK(BM_sweep_serial)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_parallel)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bootstrap_serial)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bootstrap_parallel)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

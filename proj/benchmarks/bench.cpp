#include <benchmark/benchmark.h>

#include "lanpower/inference.hpp"
#include "lanpower/lan.hpp"
#include "lanpower/models.hpp"
#include "lanpower/testing.hpp"

namespace {

using namespace lanpower;

ModelSpec ar1_spec(int n, Hypothesis hyp) {
    ModelSpec spec;
    spec.family = Family::ar1;
    spec.rho0 = 0.1;
    spec.g = PerturbationSpec{1.0, 5.0};
    spec.hypothesis = hyp;
    spec.n = n;
    return spec;
}

void BM_SimulateAr1(benchmark::State& state) {
    ModelSpec spec = ar1_spec(static_cast<int>(state.range(0)),
                              Hypothesis::local_alternative);
    GaussianStream rng(42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(spec, rng));
    }
    state.SetItemsProcessed(state.iterations() * (spec.n + spec.burn_in));
}
BENCHMARK(BM_SimulateAr1)->Arg(100)->Arg(400)->Arg(1600);

void BM_CentralSeq(benchmark::State& state) {
    ModelSpec spec = ar1_spec(static_cast<int>(state.range(0)),
                              Hypothesis::null);
    SeriesSample sample = simulate(spec, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(central_seq_ar1(sample, 0.1, spec.g));
    }
    state.SetItemsProcessed(state.iterations() * spec.n);
}
BENCHMARK(BM_CentralSeq)->Arg(400)->Arg(1600);

void BM_BootstrapBias(benchmark::State& state) {
    ModelSpec spec = ar1_spec(400, Hypothesis::null);
    SeriesSample sample = simulate(spec, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bootstrap_bias(sample, 500, 7));
    }
}
BENCHMARK(BM_BootstrapBias);

void BM_PowerReplicateAllVariants(benchmark::State& state) {
    // One paired replicate: simulate + three variant tests.
    PowerConfig cfg;
    cfg.amplitude_grid = {1.0};
    cfg.n_list = {400};
    cfg.m = 1;
    for (auto _ : state) {
        cfg.master_seed++;
        benchmark::DoNotOptimize(power_study(cfg));
    }
}
BENCHMARK(BM_PowerReplicateAllVariants);

}  // namespace

BENCHMARK_MAIN();

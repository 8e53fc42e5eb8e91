#include <benchmark/benchmark.h>

#include "greedylab/basis.hpp"
#include "greedylab/lebesgue.hpp"
#include "greedylab/parameters.hpp"
#include "greedylab/probes.hpp"
#include "greedylab/space.hpp"
#include "greedylab/thresholds.hpp"

using namespace greedylab;

static void BM_LorentzNorm(benchmark::State& state) {
    const BasisSystem b = resolve_basis("lorentz:2.0:1.0:" + std::to_string(state.range(0))).basis;
    const ProbeFamily probes = ProbeFamily::build(b.size(), ProbeConfig{});
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_norm(b.space(), probes.probes()[i]));
        i = (i + 1) % probes.size();
    }
}
BENCHMARK(BM_LorentzNorm)->Arg(8)->Arg(32);

static void BM_SubsetExtremes(benchmark::State& state) {
    const BasisSystem b = summing_basis(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(democracy_parameter(b, b.size()));
}
BENCHMARK(BM_SubsetExtremes)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_VertexUnconditionality(benchmark::State& state) {
    const BasisSystem b = summing_basis(static_cast<int>(state.range(0)));
    const ProbeFamily probes;
    for (auto _ : state) benchmark::DoNotOptimize(unconditionality_constants(b, b.size(), probes));
}
BENCHMARK(BM_VertexUnconditionality)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ExactGridOracle(benchmark::State& state) {
    const BasisSystem b = summing_basis(4);
    const ThresholdGrid grid(2.0, 4);
    for (auto _ : state) benchmark::DoNotOptimize(exact_grid_oracle(b, grid, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ExactGridOracle)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_SigmaPolyhedral(benchmark::State& state) {
    const BasisSystem b = summing_basis(8);
    const ProbeFamily probes = ProbeFamily::build(8, ProbeConfig{});
    const auto& f = probes.probes().back();
    for (auto _ : state) benchmark::DoNotOptimize(sigma_m(b, f, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SigmaPolyhedral)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include "latnet/latnet.hpp"

#include <benchmark/benchmark.h>

using namespace latnet;

namespace {

PartitionedNetwork ring40() {
    const std::vector<NodeId> manifest{NodeId{5}, NodeId{23}, NodeId{33}, NodeId{34}, NodeId{36}};
    return gen_ring(40, 0.25, 0.25, manifest);
}

void BM_Simulate(benchmark::State& state) {
    const auto net = ring40();
    const Index n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(simulate(net, n, 1).outputs.data());
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Simulate)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_NormalEquations(benchmark::State& state) {
    const auto data = simulate(ring40(), 100'000, 2);
    const int tau = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(accumulate_normal_equations(data, tau).gram.data());
    state.SetItemsProcessed(state.iterations() * data.length());
}
BENCHMARK(BM_NormalEquations)->Arg(2)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_LsarFit(benchmark::State& state) {
    const auto data = simulate(ring40(), 100'000, 3);
    const int tau = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lsar_fit(data, tau).mats.data());
}
BENCHMARK(BM_LsarFit)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_HinfNormNetwork(benchmark::State& state) {
    const auto t = manifest_tf(ring40());
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hinf_norm(t, grid));
}
BENCHMARK(BM_HinfNormNetwork)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_HinfDistanceAr(benchmark::State& state) {
    const auto net = ring40();
    const auto t1 = ar_tf(optimal_ar(net, static_cast<int>(state.range(0))));
    const auto t2 = manifest_tf(net);
    for (auto _ : state) benchmark::DoNotOptimize(hinf_distance(t1, t2));
}
BENCHMARK(BM_HinfDistanceAr)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SpectralRadius(benchmark::State& state) {
    const auto a = ring40().assemble();
    for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(a));
}
BENCHMARK(BM_SpectralRadius);

}  // namespace
BENCHMARK_MAIN();

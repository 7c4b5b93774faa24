#include "tsf/tsf.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace tsf;

namespace {

Dataset shifted(std::size_t n, std::size_t m) {
    SyntheticSpec spec;
    spec.length = m;
    spec.per_class = n / 2;
    spec.seed = 3;
    spec.mean_interval = {m / 5 + 1, m / 4};
    spec.std_interval = {m / 2 + 1, m * 11 / 20};
    return generate_shifted_dataset(spec);
}

ForestConfig config(std::size_t trees) {
    ForestConfig c;
    c.n_trees = trees;
    c.tree.kappa = 20;
    c.master_seed = 1;
    return c;
}

} // namespace

// Fit cost should grow about linearly in both M and N.
static void BM_FitLength(benchmark::State& state) {
    const Dataset data = shifted(200, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit(data, config(10), 1));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitLength)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_FitInstances(benchmark::State& state) {
    const Dataset data = shifted(static_cast<std::size_t>(state.range(0)), 512);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit(data, config(10), 1));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitInstances)->RangeMultiplier(2)->Range(250, 2000)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_RootSplit(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const Dataset data = shifted(200, m);
    std::vector<Interval> intervals;
    std::mt19937_64 gen(9);
    for (int i = 0; i < 32; ++i) {
        const std::size_t t1 = 1 + gen() % (m - 1);
        intervals.push_back({t1, t1 + 1 + gen() % (m - t1)});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(best_split_for_kind(data, FeatureKind::Slope, intervals, 20));
    }
}
BENCHMARK(BM_RootSplit)->Arg(128)->Arg(1024)->Unit(benchmark::kMicrosecond);

static void BM_Dtw(benchmark::State& state) {
    std::mt19937_64 gen(4);
    std::normal_distribution<double> normal;
    std::vector<double> a(512), b(512);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = normal(gen);
        b[i] = normal(gen);
    }
    const WarpingWindow w{static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(dtw_distance(a, b, w));
    }
}
BENCHMARK(BM_Dtw)->Arg(0)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();

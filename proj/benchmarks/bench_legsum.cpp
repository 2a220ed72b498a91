#include "legsum/experiments.hpp"
#include "legsum/front.hpp"
#include "legsum/sumcalc.hpp"

#include <benchmark/benchmark.h>

using namespace legsum;

namespace {

SumSpec doubled_t114() {
    return SumSpec({torus_atlas(-11, 4), torus_atlas(-11, 4)});
}

// Cell size grows quickly with the drop below the top level; the argument
// is the number of levels descended.
void BM_classify_below_top(benchmark::State& state) {
    const SumSpec spec = doubled_t114();
    const int tb = max_tb_sum(spec) - static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto classes = classify(spec, TbR{tb, 0});
        benchmark::DoNotOptimize(classes);
    }
}
BENCHMARK(BM_classify_below_top)->DenseRange(0, 4);

void BM_mountain_range(benchmark::State& state) {
    const SumSpec spec({torus_atlas(-3, 2), torus_atlas(-3, 2)});
    const Window window{-17, -11, -6, 6};
    const unsigned jobs = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        auto range = mountain_range(spec, window, jobs);
        benchmark::DoNotOptimize(range);
    }
}
BENCHMARK(BM_mountain_range)->Arg(1)->Arg(4);

void BM_simplicity_diagonal(benchmark::State& state) {
    const SumSpec spec = doubled_t114();
    const int top = max_tb_sum(spec);
    const Window window{top - 10, top, -24, 24};
    for (auto _ : state) {
        auto report = check_transverse_simplicity(spec, window, 8);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_simplicity_diagonal);

void BM_front_invariants(benchmark::State& state) {
    const FrontDiagram f = twist_front(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto inv = invariants(f);
        benchmark::DoNotOptimize(inv);
    }
}
BENCHMARK(BM_front_invariants)->Arg(5)->Arg(50)->Arg(500);

void BM_connect_front(benchmark::State& state) {
    const FrontDiagram a = twist_front(10);
    const FrontDiagram b = twist_front(10);
    for (auto _ : state) {
        auto sum = connect_front(a, b);
        benchmark::DoNotOptimize(sum);
    }
}
BENCHMARK(BM_connect_front);

} // namespace

BENCHMARK_MAIN();

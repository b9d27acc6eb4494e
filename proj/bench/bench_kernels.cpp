// Serial reference paths against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "isolab/calculus.hpp"
#include "isolab/homogeneity.hpp"
#include "isolab/kernels.hpp"
#include "isolab/search.hpp"

using namespace isolab;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_EvaluateGrid(benchmark::State& state)
{
    auto fam = builtin_family("ring_torus");
    auto grid = interior_samples(fam.domain, static_cast<std::size_t>(state.range(1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_grid(fam, grid, mode(state)));
}

void BM_Classify(benchmark::State& state)
{
    auto fam = builtin_family("square_pyramid");
    auto grid = interior_samples(fam.domain, 64);
    for (auto _ : state)
        benchmark::DoNotOptimize(classify(fam, grid, 1e-8, mode(state)));
}

void BM_Inradius(benchmark::State& state)
{
    auto fam = builtin_family("cone");
    auto grid = interior_samples(fam.domain, 256);
    for (auto _ : state)
        benchmark::DoNotOptimize(tong_anchored_inradius(fam, grid.front(), grid, {}, mode(state)));
}

void BM_Kmin(benchmark::State& state)
{
    auto cls = builtin_class("square_pyramid");
    for (auto _ : state)
        benchmark::DoNotOptimize(kmin(cls, 16, 1e-13, 0, mode(state)));
}

}  // namespace

BENCHMARK(BM_EvaluateGrid)->ArgsProduct({{0, 1}, {1 << 12, 1 << 16}});
BENCHMARK(BM_Classify)->Arg(0)->Arg(1);
BENCHMARK(BM_Inradius)->Arg(0)->Arg(1);
BENCHMARK(BM_Kmin)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

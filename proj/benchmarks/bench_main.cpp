#include <benchmark/benchmark.h>

#include "wzborel/borel.hpp"
#include "wzborel/mellin.hpp"
#include "wzborel/physical.hpp"
#include "wzborel/rayquad.hpp"
#include "wzborel/singular.hpp"

using namespace wzborel;

static void BM_HTaylor(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(mellin::h_taylor(static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_HTaylor)->Arg(10)->Arg(20)->Arg(29)->Unit(benchmark::kMillisecond);

static void BM_SdSolve(benchmark::State &state)
{
    const physical::SolveOptions opts{static_cast<int>(state.range(1))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(physical::sd_solve(static_cast<int>(state.range(0)), opts));
    }
}
BENCHMARK(BM_SdSolve)->Args({12, 1})->Args({20, 1})->Args({20, 4})->Unit(benchmark::kMillisecond);

static void BM_OdeReference(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(physical::ode_reference(static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_OdeReference)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_BorelConvolve(benchmark::State &state)
{
    const auto g = borel::borel_map(physical::ode_reference(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(borel::borel_convolve(g, g));
    }
}
BENCHMARK(BM_BorelConvolve)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_DombSykes(benchmark::State &state)
{
    const auto b = borel::borel_map(physical::ode_reference(200)).series();
    for (auto _ : state) {
        benchmark::DoNotOptimize(singular::domb_sykes(b));
    }
}
BENCHMARK(BM_DombSykes)->Unit(benchmark::kMillisecond);

static void BM_SolveRay(benchmark::State &state)
{
    const rayquad::Ray ray{{40.0, 35.0}, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(rayquad::solve_ray(ray));
    }
}
BENCHMARK(BM_SolveRay)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

static void BM_ChenEval(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(rayquad::chen_eval({0.1, 0.1}));
    }
}
BENCHMARK(BM_ChenEval)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

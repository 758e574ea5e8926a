#include "aia/intertwiner.hpp"
#include "aia/lindblad_open.hpp"
#include "aia/lz_closed.hpp"
#include "aia/numkit.hpp"
#include "aia/tfi.hpp"

#include <benchmark/benchmark.h>

using namespace aia;

static void BM_LzEvolve(benchmark::State& state)
{
    const LzParams p{0.1, -1.0, 1.0, static_cast<double>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve_schrodinger(p));
}
BENCHMARK(BM_LzEvolve)->RangeMultiplier(10)->Range(1, 10000)->Unit(benchmark::kMillisecond);

static void BM_LzAiaState(benchmark::State& state)
{
    const LzParams p{0.1, -1.0, 1.0, 1000.0};
    const SwitchingTimes st = switching_times(p, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(aia_state(p, st));
}
BENCHMARK(BM_LzAiaState);

static void BM_LzOptimizeDtau(benchmark::State& state)
{
    const LzParams p{0.1, -1.0, 1.0, static_cast<double>(state.range(0))};
    const StateVector exact = evolve_schrodinger(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_dtau(p, exact));
}
BENCHMARK(BM_LzOptimizeDtau)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_TfiRegister(benchmark::State& state)
{
    const TfiParams p{static_cast<int>(state.range(0)), 0.5, 1.5, 100.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve_register(p));
}
BENCHMARK(BM_TfiRegister)->Arg(16)->Arg(150)->Unit(benchmark::kMillisecond);

static void BM_LiouvillianSpectrum(benchmark::State& state)
{
    double z = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(liouvillian_spectrum(0.1, z, 20.0, 0.01));
        z = z < 1.0 ? z + 1e-3 : -1.0;
    }
}
BENCHMARK(BM_LiouvillianSpectrum);

static void BM_MasterEquation(benchmark::State& state)
{
    const OpenParams p{0.1, -1.0, 1.0, static_cast<double>(state.range(0)), 0.05, 0.01};
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve_master(p));
}
BENCHMARK(BM_MasterEquation)->Arg(10)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_FullIntertwiner(benchmark::State& state)
{
    const OpenParams p{1.0, -1.0, 1.0, static_cast<double>(state.range(0)), 0.05, 0.01};
    for (auto _ : state)
        benchmark::DoNotOptimize(full_intertwiner(p, 1.0, {1e-12, 1e-14}));
}
BENCHMARK(BM_FullIntertwiner)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_EigHermitian(benchmark::State& state)
{
    Mat4c m = Mat4c::Random();
    m = (m + m.adjoint()).eval();
    for (auto _ : state)
        benchmark::DoNotOptimize(eig_hermitian(m));
}
BENCHMARK(BM_EigHermitian);

BENCHMARK_MAIN();

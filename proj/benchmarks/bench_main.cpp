#include <benchmark/benchmark.h>

#include "qhe/bethe.hpp"
#include "qhe/cycle.hpp"
#include "qhe/gibbs.hpp"
#include "qhe/luttinger.hpp"
#include "qhe/tba.hpp"

namespace {

void BM_BetheSolveGround(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    qhe::GasSpec gas{n, 1.0, 10.0};
    auto qn = qhe::QuantumNumbers::ground_state(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(qhe::solve_bethe_roots(qn, gas));
}
BENCHMARK(BM_BetheSolveGround)->Arg(2)->Arg(5)->Arg(10)->Arg(20);

void BM_EnumerateStates(benchmark::State& state)
{
    qhe::GasSpec gas{5, 1.0, 200.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(qhe::enumerate_states(gas, 150.0, 1e-8));
}
BENCHMARK(BM_EnumerateStates)->Unit(benchmark::kMillisecond);

void BM_FiniteCycle(benchmark::State& state)
{
    qhe::CycleSpec spec{qhe::GasSpec{5, 1.0, 1.0}, 100.0, 200.0, 75.0, 150.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(qhe::run_finite_cycle(spec));
}
BENCHMARK(BM_FiniteCycle)->Unit(benchmark::kMillisecond);

void BM_DressedEnergy(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(qhe::solve_dressed_energy(1.0, 2.0, 1.0));
}
BENCHMARK(BM_DressedEnergy)->Unit(benchmark::kMillisecond);

void BM_ThermoState(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(qhe::thermo_state(1.0, 2.0, 1.0));
}
BENCHMARK(BM_ThermoState)->Unit(benchmark::kMillisecond);

void BM_MuFromDensity(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(qhe::mu_from_density(1.0, 1.0, 1.0));
}
BENCHMARK(BM_MuFromDensity)->Unit(benchmark::kMillisecond);

void BM_TbaCycle(benchmark::State& state)
{
    qhe::TbaCycleSpec spec{1.0, 3.0, 1.0, 5.0, 2.0, 1.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(qhe::run_tba_cycle(spec));
}
BENCHMARK(BM_TbaCycle)->Unit(benchmark::kMillisecond);

void BM_SoundVelocityTba(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(qhe::sound_velocity_tba(1.0, 2.0));
}
BENCHMARK(BM_SoundVelocityTba)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

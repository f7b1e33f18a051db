// Serial vs OpenMP kernels: partition generation, hydro projection, modal assembly.
#include "vsb/assembly.hpp"
#include "vsb/forces.hpp"
#include "vsb/hydrostatics.hpp"

#include <benchmark/benchmark.h>

using namespace vsb;

namespace {

const ShellProperties& shell()
{
    static const auto s = ShellProperties::with_density(2.0, 0.01, 1e7, 0.3, 2700.0);
    return s;
}

GeneralizedState state(int modes)
{
    auto s = GeneralizedState::zero(modes);
    s.q(2) = -0.2;
    for (int k = 0; k < modes; ++k) s.q(6 + k) = 0.01 / (1 + k);
    return s;
}

void BM_discretize(benchmark::State& st, Execution exec)
{
    const ModalBasis b(shell(), 7);
    const MeridianGrid grid(b, static_cast<int>(st.range(0)));
    const auto s = state(7);
    for (auto _ : st) benchmark::DoNotOptimize(discretize(s, grid, {}, exec));
}

void BM_hydro(benchmark::State& st, Execution exec)
{
    const ModalBasis b(shell(), 7);
    const MeridianGrid grid(b, static_cast<int>(st.range(0)));
    const auto s = state(7);
    const auto parts = discretize(s, grid);
    for (auto _ : st)
        benchmark::DoNotOptimize(
            hydro_generalized(s, parts, b, ExcitationSpec{}, 0.3, BuoyancyGuard::continuous, exec, &grid));
}

void BM_assemble(benchmark::State& st, Execution exec)
{
    const ModalBasis b(shell(), static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(assemble_modal(b, 0.0, 1e-4, exec));
}

} // namespace

BENCHMARK_CAPTURE(BM_discretize, serial, Execution::serial)->Arg(200)->Arg(2000);
BENCHMARK_CAPTURE(BM_discretize, parallel, Execution::parallel)->Arg(200)->Arg(2000);
BENCHMARK_CAPTURE(BM_hydro, serial, Execution::serial)->Arg(200)->Arg(2000);
BENCHMARK_CAPTURE(BM_hydro, parallel, Execution::parallel)->Arg(200)->Arg(2000);
BENCHMARK_CAPTURE(BM_assemble, serial, Execution::serial)->Arg(7)->Arg(24);
BENCHMARK_CAPTURE(BM_assemble, parallel, Execution::parallel)->Arg(7)->Arg(24);

BENCHMARK_MAIN();

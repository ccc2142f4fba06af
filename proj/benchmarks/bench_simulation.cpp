#include <gangsched/generator.hpp>
#include <gangsched/simulator.hpp>

#include <benchmark/benchmark.h>

using namespace gangsched;

static void BM_SimulateGlobalGang(benchmark::State& state, SchedulerKind kind) {
    GenSpec spec;
    spec.processors = 8;
    spec.tasks = 16;
    spec.normalized_utilization = 0.5;
    spec.seed = 31;
    const auto set = gen_taskset(spec);
    const auto releases = ReleasePattern::synchronous(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_global(set.processors, kind, set.tasks, releases));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_SimulateGlobalGang, fp_p,
                  SchedulerKind{Policy::FixedPriority, Preemption::Preemptive, Scope::Gang})
    ->Arg(1000)
    ->Arg(10000);
BENCHMARK_CAPTURE(BM_SimulateGlobalGang, fp_np,
                  SchedulerKind{Policy::FixedPriority, Preemption::NonPreemptive, Scope::Gang})
    ->Arg(1000)
    ->Arg(10000);
BENCHMARK_CAPTURE(BM_SimulateGlobalGang, edf_p,
                  SchedulerKind{Policy::Edf, Preemption::Preemptive, Scope::Gang})
    ->Arg(1000)
    ->Arg(10000);

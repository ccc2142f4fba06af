#include <gangsched/generator.hpp>
#include <gangsched/partitioning.hpp>

#include <benchmark/benchmark.h>

using namespace gangsched;

namespace {

GeneratedSet grid_set(int processors, int n, double load) {
    GenSpec spec;
    spec.processors = processors;
    spec.tasks = n;
    spec.level = VolumeLevel::Medium;
    spec.normalized_utilization = load;
    spec.seed = 21;
    return gen_taskset(spec);
}

const SchedulerKind kFpP{Policy::FixedPriority, Preemption::Preemptive, Scope::Uniprocessor};
const SchedulerKind kFpNp{Policy::FixedPriority, Preemption::NonPreemptive, Scope::Uniprocessor};
const SchedulerKind kEdfP{Policy::Edf, Preemption::Preemptive, Scope::Uniprocessor};

}  // namespace

static void BM_SpU(benchmark::State& state, SchedulerKind kind) {
    const auto set = grid_set(16, int(state.range(0)), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(sp_u(set.tasks, set.processors, kind));
}
BENCHMARK_CAPTURE(BM_SpU, fp_p, kFpP)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_SpU, fp_np, kFpNp)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_SpU, edf_p, kEdfP)->Arg(16)->Arg(32);

static void BM_SpGBaseline(benchmark::State& state) {
    const auto set = grid_set(16, int(state.range(0)), 0.5);
    const auto handle = baseline_gang_handle();
    SchedulerKind gang = kFpP;
    gang.scope = Scope::Gang;
    for (auto _ : state) benchmark::DoNotOptimize(sp_g(set.tasks, set.processors, gang, handle));
}
BENCHMARK(BM_SpGBaseline)->Arg(16)->Arg(32);

static void BM_GenTaskset(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) {
        GenSpec spec;
        spec.processors = 16;
        spec.tasks = int(state.range(0));
        spec.seed = seed++;
        benchmark::DoNotOptimize(gen_taskset(spec));
    }
}
BENCHMARK(BM_GenTaskset)->Arg(16)->Arg(32);

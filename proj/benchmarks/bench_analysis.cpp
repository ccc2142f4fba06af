#include <gangsched/bounds.hpp>
#include <gangsched/gang.hpp>
#include <gangsched/generator.hpp>
#include <gangsched/uniproc.hpp>

#include <benchmark/benchmark.h>

using namespace gangsched;

namespace {

// n sequential tasks at the given total load, deadline-monotonic order.
TaskSet sequential_set(int n, double load, std::uint64_t seed) {
    GenSpec spec;
    spec.processors = 1;
    spec.tasks = n;
    spec.level = VolumeLevel::High;  // the range collapses to volume 1 on M = 1
    spec.normalized_utilization = load;
    spec.seed = seed;
    // Wide period range so that small per-task shares still give C >= 1.
    spec.period_min = 100;
    spec.period_max = 100'000;
    return gen_taskset(spec).tasks;
}

TaskSet gang_set(int processors, int n, double load, std::uint64_t seed) {
    GenSpec spec;
    spec.processors = processors;
    spec.tasks = n;
    spec.level = VolumeLevel::Medium;
    spec.normalized_utilization = load;
    spec.seed = seed;
    return gen_taskset(spec).tasks;
}

}  // namespace

static void BM_RtaFpPreemptive(benchmark::State& state) {
    const auto ts = sequential_set(int(state.range(0)), 0.7, 11);
    const auto order = dm_priority_order(ts);
    for (auto _ : state) benchmark::DoNotOptimize(rta_fp_preemptive(ts, order));
}
BENCHMARK(BM_RtaFpPreemptive)->Arg(4)->Arg(16)->Arg(64);

static void BM_RtaFpNonPreemptive(benchmark::State& state) {
    const auto ts = sequential_set(int(state.range(0)), 0.7, 12);
    const auto order = dm_priority_order(ts);
    for (auto _ : state) benchmark::DoNotOptimize(rta_fp_nonpreemptive(ts, order));
}
BENCHMARK(BM_RtaFpNonPreemptive)->Arg(4)->Arg(16)->Arg(64);

static void BM_EdfDemand(benchmark::State& state) {
    const auto ts = sequential_set(int(state.range(0)), 0.7, 13);
    for (auto _ : state) benchmark::DoNotOptimize(edf_demand_test(ts));
}
BENCHMARK(BM_EdfDemand)->Arg(4)->Arg(16);

static void BM_BaselineGangRta(benchmark::State& state) {
    const auto ts = gang_set(16, int(state.range(0)), 0.3, 14);
    const auto order = dm_priority_order(ts);
    for (auto _ : state) benchmark::DoNotOptimize(baseline_gang_rta_fp(ts, 16, order));
}
BENCHMARK(BM_BaselineGangRta)->Arg(8)->Arg(32);

static void BM_SpB(benchmark::State& state) {
    const auto ts = gang_set(16, int(state.range(0)), 0.3, 15);
    for (auto _ : state) benchmark::DoNotOptimize(sp_b(ts, 16));
}
BENCHMARK(BM_SpB)->Arg(16)->Arg(32);

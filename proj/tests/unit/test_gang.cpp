#include <gangsched/gang.hpp>
#include <gangsched/simulator.hpp>

#include "support/random_sets.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace gangsched;

namespace {

std::vector<std::size_t> identity_order(std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return order;
}

PartitionPlan single_gang_partition(const TaskSet& tasks, int volume) {
    PartitionPlan plan;
    Partition p;
    p.volume = volume;
    p.scheduler = {Policy::FixedPriority, Preemption::Preemptive, Scope::Gang};
    for (const auto& t : tasks) p.members.push_back(t.id());
    plan.partitions.push_back(p);
    return plan;
}

const SchedulerKind kGangFpP{Policy::FixedPriority, Preemption::Preemptive, Scope::Gang};
const SchedulerKind kGangFpNp{Policy::FixedPriority, Preemption::NonPreemptive, Scope::Gang};

}  // namespace

TEST(PairwiseSequential, Examples) {
    const TaskSet two_wide{validate_task(0, 1, 5, 5, 2), validate_task(1, 1, 5, 5, 2)};
    EXPECT_TRUE(pairwise_sequential(two_wide, 3));
    EXPECT_FALSE(pairwise_sequential(two_wide, 4));
    EXPECT_TRUE(pairwise_sequential(TaskSet{validate_task(0, 1, 5, 5, 3)}, 3));
    EXPECT_TRUE(pairwise_sequential(TaskSet{}, 1));
}

TEST(PairwiseSequential, PermutationInvariant) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = testkit::random_instance(rng);
        std::vector<GangTask> shuffled(inst.tasks.begin(), inst.tasks.end());
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (int v = 1; v <= inst.processors; ++v)
            ASSERT_EQ(pairwise_sequential(inst.tasks, v),
                      pairwise_sequential(TaskSet(shuffled), v));
    }
}

TEST(BaselineGangRta, WorkedExample) {
    const TaskSet ts{validate_task(1, 2, 10, 10, 3), validate_task(2, 2, 10, 10, 2),
                     validate_task(3, 7, 10, 10, 2)};
    const auto verdict = baseline_gang_rta_fp(ts, 4, identity_order(3));
    EXPECT_TRUE(verdict.schedulable);
    EXPECT_EQ(verdict.responses.at(1), 2);
    EXPECT_EQ(verdict.responses.at(2), 4);
    EXPECT_EQ(verdict.responses.at(3), 10);
}

TEST(BaselineGangRta, NoInterferenceShortcut) {
    const TaskSet ts{validate_task(0, 3, 10, 10, 2), validate_task(1, 5, 10, 10, 2)};
    const auto verdict = baseline_gang_rta_fp(ts, 4, identity_order(2));
    EXPECT_EQ(verdict.responses.at(1), 5);
}

TEST(BaselineGangRta, LoneTask) {
    const TaskSet ts{validate_task(0, 5, 9, 9, 3)};
    EXPECT_EQ(baseline_gang_rta_fp(ts, 3, identity_order(1)).responses.at(0), 5);
}

TEST(BaselineGangRta, Errors) {
    const TaskSet ts{validate_task(0, 5, 9, 9, 3)};
    try {
        baseline_gang_rta_fp(ts, 3, identity_order(1), Preemption::NonPreemptive);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPreemptiveUnsupported);
    }
    const auto too_wide = baseline_gang_rta_fp(ts, 2, identity_order(1));
    EXPECT_FALSE(too_wide.schedulable);
    EXPECT_EQ(too_wide.reason, "volume-exceeds-partition");
}

TEST(BaselineGangRta, ReducesToUniprocessorRtaOnUniformVolumes) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 500; ++trial) {
        const auto seq = testkit::random_uniproc_set(rng, 5, 25, trial % 2 == 0);
        const int volume = 1 + trial % 4;
        std::vector<GangTask> wide;
        for (const auto& t : seq)
            wide.push_back(validate_task(t.id(), t.wcet(), t.period(), t.deadline(), volume));
        const TaskSet gang(std::move(wide));
        const auto order = dm_priority_order(seq);
        const auto uni = rta_fp_preemptive(seq, order);
        const auto baseline = baseline_gang_rta_fp(gang, volume, order);
        ASSERT_EQ(uni.schedulable, baseline.schedulable) << "trial " << trial;
        ASSERT_EQ(uni.responses, baseline.responses) << "trial " << trial;
    }
}

TEST(BaselineGangRta, MonotoneInPartitionVolume) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 500; ++trial) {
        const auto inst = testkit::random_instance(rng);
        const auto order = dm_priority_order(inst.tasks);
        bool before = false;
        for (int v = inst.tasks.max_volume(); v <= inst.tasks.max_volume() + 4; ++v) {
            const bool now = baseline_gang_rta_fp(inst.tasks, v, order).schedulable;
            ASSERT_FALSE(before && !now) << "trial " << trial << " volume " << v;
            before = now;
        }
    }
}

TEST(BaselineGangRta, SoundAgainstSynchronousSimulation) {
    std::mt19937_64 rng(34);
    int accepted = 0;
    for (int trial = 0; trial < 1500; ++trial) {
        const auto inst = testkit::random_instance(rng);
        const int volume = inst.processors;
        if (inst.tasks.max_volume() > volume) continue;
        const auto order = dm_priority_order(inst.tasks);
        const auto verdict = baseline_gang_rta_fp(inst.tasks, volume, order);
        if (!verdict.schedulable) continue;
        ++accepted;
        const Time horizon = hyperperiod(inst.tasks, 20'000).value_or(20'000);
        const auto trace = simulate(single_gang_partition(inst.tasks, volume), inst.tasks,
                                    ReleasePattern::synchronous(horizon));
        ASSERT_TRUE(trace.no_miss()) << "trial " << trial;
        for (const auto& job : trace.jobs)
            if (job.release == 0 && job.finish)
                ASSERT_LE(*job.response(), verdict.responses.at(job.task)) << "trial " << trial;
    }
    EXPECT_GT(accepted, 100);
}

TEST(GangTestRegistry, Resolution) {
    GangTestRegistry empty;
    EXPECT_EQ(resolve_gang_test(kGangFpP, empty).name, kBaselineGangTest);
    EXPECT_EQ(resolve_gang_test(kGangFpNp, empty).name, kRejectGangTest);

    GangTestRegistry registry;
    GangTestHandle external{"ext-g22", {kGangFpP},
                            [](const TaskSet&, int, std::span<const std::size_t>) {
                                return SchedVerdict{true, {}, "ok"};
                            }};
    registry.add(external);
    EXPECT_EQ(resolve_gang_test(kGangFpP, registry).name, "ext-g22");
    EXPECT_EQ(resolve_gang_test(kGangFpNp, registry).name, kRejectGangTest);
    ASSERT_NE(registry.find("ext-g22"), nullptr);
    EXPECT_EQ(registry.find("missing"), nullptr);

    const TaskSet ts{validate_task(0, 1, 5, 5, 1)};
    const auto reject = reject_gang_handle();
    const auto verdict = reject(ts, 1, identity_order(1));
    EXPECT_FALSE(verdict.schedulable);
    EXPECT_EQ(verdict.reason, "no-sound-gang-test");
}

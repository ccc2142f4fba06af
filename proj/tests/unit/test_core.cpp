#include <gangsched/partition.hpp>
#include <gangsched/task.hpp>
#include <gangsched/taskset_io.hpp>

#include "support/random_sets.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace gangsched;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::IoFailure;
}

TaskSet sequential(std::initializer_list<std::array<Time, 3>> ctd) {
    std::vector<GangTask> tasks;
    int id = 0;
    for (const auto& [c, t, d] : ctd) tasks.push_back(validate_task(id++, c, t, d, 1));
    return TaskSet(std::move(tasks));
}

}  // namespace

TEST(ValidateTask, AcceptsFigureTasks) {
    const auto t1 = validate_task(1, 2, 5, 5, 1);
    EXPECT_EQ(t1.wcet(), 2);
    EXPECT_EQ(t1.utilization(), Rational(2, 5));
    const auto t2 = validate_task(2, 3, 6, 6, 2);
    EXPECT_EQ(t2.seq_utilization(), Rational(1, 2));
    EXPECT_EQ(t2.utilization(), Rational(1));
}

TEST(ValidateTask, RejectsInvalidFields) {
    EXPECT_EQ(code_of([] { validate_task(0, 4, 3, 3, 1); }), ErrorCode::WcetExceedsDeadline);
    EXPECT_EQ(code_of([] { validate_task(0, 2, 5, 6, 1); }), ErrorCode::DeadlineExceedsPeriod);
    EXPECT_EQ(code_of([] { validate_task(0, 0, 5, 5, 1); }), ErrorCode::NonPositiveField);
    EXPECT_EQ(code_of([] { validate_task(0, 1, 5, 5, 0); }), ErrorCode::NonPositiveField);
    EXPECT_EQ(code_of([] { validate_task(0, 1, -5, 5, 1); }), ErrorCode::NonPositiveField);
}

TEST(TaskSet, AggregatesAndDuplicates) {
    const TaskSet ts{validate_task(1, 2, 5, 5, 1), validate_task(2, 3, 6, 6, 2),
                     validate_task(3, 2, 7, 7, 2)};
    EXPECT_EQ(ts.max_volume(), 2);
    EXPECT_EQ(ts.min_volume(), 1);
    EXPECT_EQ(ts.total_utilization(), Rational(2, 5) + Rational(1) + Rational(4, 7));
    EXPECT_EQ(code_of([] { TaskSet{validate_task(1, 1, 2, 2, 1), validate_task(1, 1, 3, 3, 1)}; }),
              ErrorCode::DuplicateTaskId);
    EXPECT_EQ(TaskSet{}.max_volume(), 0);
}

TEST(DmPriorityOrder, Examples) {
    EXPECT_EQ(dm_priority_order(sequential({{1, 5, 5}, {1, 6, 6}, {1, 7, 7}})),
              (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(dm_priority_order(sequential({{1, 7, 7}, {1, 5, 5}, {1, 6, 6}})),
              (std::vector<std::size_t>{1, 2, 0}));
    EXPECT_EQ(dm_priority_order(sequential({{1, 6, 6}, {1, 6, 6}})),
              (std::vector<std::size_t>{0, 1}));
}

TEST(DmPriorityOrder, TiesFollowIdNotPosition) {
    const TaskSet ts{validate_task(9, 1, 6, 6, 1), validate_task(4, 1, 6, 6, 1)};
    EXPECT_EQ(dm_priority_order(ts), (std::vector<std::size_t>{1, 0}));
}

TEST(DmPriorityOrder, IsADeterministicPermutation) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = testkit::random_instance(rng);
        const auto order = dm_priority_order(inst.tasks);
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> expected(inst.tasks.size());
        std::iota(expected.begin(), expected.end(), std::size_t{0});
        ASSERT_EQ(sorted, expected);
        ASSERT_EQ(order, dm_priority_order(inst.tasks));
        for (std::size_t k = 1; k < order.size(); ++k)
            ASSERT_LE(inst.tasks[order[k - 1]].deadline(), inst.tasks[order[k]].deadline());
    }
}

TEST(Hyperperiod, Examples) {
    EXPECT_EQ(hyperperiod(sequential({{1, 5, 5}, {1, 6, 6}, {1, 7, 7}})), Time{210});
    EXPECT_EQ(hyperperiod(sequential({{1, 4, 4}, {1, 4, 4}})), Time{4});
    EXPECT_EQ(hyperperiod(sequential({{1, 9999991, 9999991}, {1, 9999989, 9999989}})), std::nullopt);
    EXPECT_EQ(hyperperiod(sequential({{1, 6, 6}, {1, 10, 10}}), 29), std::nullopt);
    EXPECT_EQ(hyperperiod(sequential({{1, 6, 6}, {1, 10, 10}}), 30), Time{30});
}

TEST(GangTask, UtilizationIdentity) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = testkit::random_instance(rng);
        for (const auto& t : inst.tasks) {
            ASSERT_EQ(t.utilization(), t.volume() * t.seq_utilization());
            ASSERT_GT(t.utilization(), 0);
            ASSERT_LE(t.utilization(), t.volume());
        }
    }
}

TEST(SchedulerKind, RejectsNonPreemptiveEdf) {
    EXPECT_EQ(code_of([] {
                  validate_scheduler_kind({Policy::Edf, Preemption::NonPreemptive, Scope::Gang});
              }),
              ErrorCode::InvalidConfig);
    EXPECT_NO_THROW(validate_scheduler_kind({Policy::Edf, Preemption::Preemptive, Scope::Gang}));
    EXPECT_EQ(to_string(SchedulerKind{Policy::FixedPriority, Preemption::NonPreemptive, Scope::Gang}),
              "gang-fp-np");
}

TEST(CheckPlan, DetectsViolations) {
    const TaskSet ts{validate_task(1, 1, 5, 5, 1), validate_task(2, 1, 5, 5, 2)};
    PartitionPlan plan;
    plan.partitions = {{0, 2, {2}, {}}, {1, 1, {1}, {}}};
    plan.unassigned = 1;
    EXPECT_EQ(check_plan(plan, ts, 4), "");
    EXPECT_NE(check_plan(plan, ts, 5), "");

    auto twice = plan;
    twice.partitions[0].members.push_back(1);
    EXPECT_NE(check_plan(twice, ts, 4), "");

    auto narrow = plan;
    narrow.partitions[0].volume = 1;
    narrow.unassigned = 2;
    EXPECT_NE(check_plan(narrow, ts, 4), "");

    auto missing = plan;
    missing.partitions.pop_back();
    missing.unassigned = 2;
    EXPECT_NE(check_plan(missing, ts, 4), "");
}

TEST(TaskSetIo, ParsesFixtureFile) {
    const auto file = read_taskset(GANGSCHED_FIXTURES "/fig3.json");
    EXPECT_EQ(file.platform.processors, 3);
    ASSERT_EQ(file.tasks.size(), 3u);
    EXPECT_EQ(file.tasks.by_id(2), validate_task(2, 3, 6, 6, 2));
}

TEST(TaskSetIo, RejectsMalformedDocuments) {
    EXPECT_EQ(code_of([] { parse_taskset("not json"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_taskset(R"({"tasks": []})"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_taskset(R"({"platform": {"processors": 2}, "tasks": [{"id": 1}]})"); }),
              ErrorCode::ParseError);
    EXPECT_EQ(code_of([] {
                  parse_taskset(R"({"platform": {"processors": 2}, "tasks": [
                      {"id": 1, "wcet": 2.5, "period": 5, "deadline": 5, "volume": 1}]})");
              }),
              ErrorCode::ParseError);
    EXPECT_EQ(code_of([] {
                  parse_taskset(R"({"platform": {"processors": 2}, "tasks": [
                      {"id": 1, "wcet": 6, "period": 5, "deadline": 5, "volume": 1}]})");
              }),
              ErrorCode::WcetExceedsDeadline);
    EXPECT_EQ(code_of([] { read_taskset("/nonexistent/file.json"); }), ErrorCode::IoFailure);
}

TEST(TaskSetIo, FormatParseRoundTrip) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto inst = testkit::random_instance(rng);
        const TaskSetFile file{Platform{inst.processors}, inst.tasks};
        const auto back = parse_taskset(format_taskset(file));
        ASSERT_EQ(back.platform.processors, inst.processors);
        ASSERT_EQ(back.tasks, inst.tasks);
    }
}

TEST(TaskSetIo, PlanFormatUsesFixedKeys) {
    PartitionPlan plan;
    plan.partitions = {{0, 2, {2, 3}, {}}, {1, 1, {1}, {}}};
    plan.unassigned = 0;
    const auto text = format_plan(plan);
    EXPECT_NE(text.find("\"partitions\""), std::string::npos);
    EXPECT_NE(text.find("\"volume\": 2"), std::string::npos);
    EXPECT_NE(text.find("\"members\""), std::string::npos);
    EXPECT_NE(text.find("\"unassigned\": 0"), std::string::npos);
}

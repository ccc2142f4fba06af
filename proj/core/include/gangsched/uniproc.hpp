#pragma once

#include <gangsched/task.hpp>

#include <map>
#include <span>
#include <string>

namespace gangsched {

/// Outcome of a schedulability test. `responses` holds the worst-case
/// response time of every task whose analysis completed; a task whose
/// iteration was cut off (it would miss) is absent unless the test reports
/// the first offending value.
struct SchedVerdict {
    bool schedulable = false;
    std::map<TaskId, Time> responses;
    std::string reason;

    explicit operator bool() const noexcept { return schedulable; }
};

// The tests below treat the task set as running on one serialized resource:
// gang volumes are ignored, only C, T and D matter. `order` lists task
// indices from highest to lowest priority and must be a permutation.

/// Exact response-time analysis for preemptive fixed priority:
/// R = C_i + sum_{hp} ceil(R / T_j) C_j, started at C_i, cut off once R > D_i.
SchedVerdict rta_fp_preemptive(const TaskSet& tasks, std::span<const std::size_t> order);

/// Exact non-preemptive fixed-priority analysis over the level-i busy
/// period, with integer-time blocking B_i = max_{lp}(C_k - 1).
/// Throws BusyPeriodOverflow when the busy period passes `cap` ticks.
SchedVerdict rta_fp_nonpreemptive(const TaskSet& tasks, std::span<const std::size_t> order,
                                  Time cap = kDefaultTickCap);

/// Liu & Layland bound: schedulable iff sum C/T <= bound. Requires implicit
/// deadlines (throws ConstrainedDeadlinePresent otherwise).
SchedVerdict edf_utilization_test(const TaskSet& tasks, const Rational& bound = Rational(1));

/// Processor-demand test for preemptive EDF with constrained deadlines:
/// dbf(t) <= t at every absolute deadline inside the synchronous busy period.
SchedVerdict edf_demand_test(const TaskSet& tasks, Time cap = kDefaultTickCap);

}  // namespace gangsched

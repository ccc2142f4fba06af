#include <gangsched/oracles.hpp>

#include <algorithm>

namespace gangsched {

namespace {

PartitionPlan single_partition(const TaskSet& tasks, const SchedulerKind& kind) {
    PartitionPlan plan;
    Partition p;
    p.volume = std::max(1, tasks.max_volume());
    p.scheduler = kind;
    for (const auto& t : tasks) p.members.push_back(t.id());
    plan.partitions.push_back(std::move(p));
    return plan;
}

// End of the busy period that starts at `from`, driven by jobs of `level`
// tasks, or nothing if the trace ends before it closes.
std::optional<Time> busy_period_end(const SimTrace& trace, const std::vector<TaskId>& level,
                                    Time from) {
    std::vector<const JobRecord*> jobs;
    for (const auto& j : trace.jobs)
        if (std::find(level.begin(), level.end(), j.task) != level.end()) jobs.push_back(&j);
    std::sort(jobs.begin(), jobs.end(),
              [](const JobRecord* a, const JobRecord* b) { return a->release < b->release; });
    Time end = from;
    for (const auto* j : jobs) {
        if (j->release > end) break;
        if (!j->finish) return std::nullopt;
        end = std::max(end, *j->finish);
    }
    if (end >= trace.horizon) return std::nullopt;
    return end;
}

}  // namespace

std::optional<Time> critical_instant_response(const TaskSet& tasks,
                                              std::span<const std::size_t> order,
                                              std::size_t task_index, std::optional<Time> limit) {
    const auto& task = tasks[task_index];
    const Time horizon = limit.value_or(task.deadline());
    const SchedulerKind kind{Policy::FixedPriority, Preemption::Preemptive, Scope::Uniprocessor};
    SimOptions options;
    options.priority = ranking_of(tasks, order);
    const auto trace = simulate(single_partition(tasks, kind), tasks,
                                ReleasePattern::synchronous(horizon), options);
    for (const auto& job : trace.jobs)
        if (job.task == task.id() && job.release == 0) return job.response();
    return std::nullopt;
}

Time np_worst_response_oracle(const TaskSet& tasks, std::span<const std::size_t> order,
                              std::size_t task_index, Time cap) {
    const SchedulerKind kind{Policy::FixedPriority, Preemption::NonPreemptive,
                             Scope::Uniprocessor};
    const auto position = static_cast<std::size_t>(
        std::find(order.begin(), order.end(), task_index) - order.begin());
    if (position == order.size())
        throw Error(ErrorCode::InvalidConfig, "task index missing from priority order");

    std::vector<std::size_t> level(order.begin(), order.begin() + position + 1);
    std::vector<TaskId> level_ids;
    for (auto i : level) level_ids.push_back(tasks[i].id());

    // Candidate blockers: every lower-priority task, plus "no blocker".
    std::vector<std::optional<std::size_t>> blockers{std::nullopt};
    for (std::size_t l = position + 1; l < order.size(); ++l) blockers.push_back(order[l]);

    const TaskId target = tasks[task_index].id();
    Time worst = 0;
    for (const auto& blocker : blockers) {
        auto members = level;
        std::map<TaskId, Time> offsets;
        for (auto i : level) offsets[tasks[i].id()] = 1;
        if (blocker) {
            members.push_back(*blocker);
            offsets[tasks[*blocker].id()] = 0;
        }
        const auto scenario = tasks.subset(members);
        SimOptions options;
        options.cap = cap;
        options.priority = ranking_of(tasks, order);

        Time horizon = 64;
        for (const auto& t : scenario) horizon = std::max(horizon, 4 * t.period());
        const Time deadline = tasks[task_index].deadline();
        // A level loaded to exactly 1 can stay busy forever; its schedule then
        // repeats every level hyperperiod, so jobs released after one of them
        // add nothing new.
        std::optional<Time> repeat_after;
        Rational level_load = 0;
        for (auto i : level) level_load += tasks[i].seq_utilization();
        if (level_load == 1) {
            if (const auto h = hyperperiod(tasks.subset(level), cap)) repeat_after = 1 + *h;
        }
        while (true) {
            if (horizon > cap)
                throw Error(ErrorCode::HorizonOverflow, "level busy period exceeds oracle cap");
            const auto trace = simulate(single_partition(scenario, kind), scenario,
                                        ReleasePattern::explicit_offsets(offsets, horizon), options);
            const auto end = busy_period_end(trace, level_ids, 1);

            // Walk the target's jobs in release order through the busy period,
            // stopping at the first one that misses (an overloaded level never
            // closes its busy period).
            bool settled = false;
            Time scenario_worst = 0;
            for (const auto& job : trace.jobs) {
                if (job.task != target) continue;
                if ((end && job.release >= *end) ||
                    (repeat_after && job.release >= *repeat_after)) {
                    settled = true;
                    break;
                }
                if (!job.finish) {
                    // Starved past its deadline: a miss, whatever its finish.
                    if (trace.horizon - job.release > deadline) {
                        scenario_worst = std::max(scenario_worst, trace.horizon - job.release);
                        settled = true;
                    }
                    break;
                }
                scenario_worst = std::max(scenario_worst, *job.response());
                if (*job.response() > deadline) {
                    settled = true;
                    break;
                }
            }
            if (!settled && end) settled = true;
            if (!settled) {
                horizon *= 2;
                continue;
            }
            worst = std::max(worst, scenario_worst);
            break;
        }
    }
    return worst;
}

}  // namespace gangsched

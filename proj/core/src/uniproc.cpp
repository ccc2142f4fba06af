#include <gangsched/uniproc.hpp>

#include <algorithm>
#include <set>

namespace gangsched {

namespace {

Time ceil_div(Time a, Time b) { return (a + b - 1) / b; }

void require_tasks(const TaskSet& tasks, std::span<const std::size_t> order) {
    if (tasks.empty()) throw Error(ErrorCode::EmptyTaskSet, "no tasks to analyse");
    if (order.size() != tasks.size())
        throw Error(ErrorCode::InvalidConfig, "priority order is not a permutation of the tasks");
}

// Smallest fixed point of L = base + sum_{j in set} ceil(L/T_j) C_j, or
// nothing once L passes the cap.
std::optional<Time> busy_period(const TaskSet& tasks, std::span<const std::size_t> members,
                                Time base, Time cap) {
    Time length = base;
    for (auto j : members) length += tasks[j].wcet();
    while (true) {
        Time next = base;
        for (auto j : members) next += ceil_div(length, tasks[j].period()) * tasks[j].wcet();
        if (next > cap) return std::nullopt;
        if (next == length) return length;
        length = next;
    }
}

}  // namespace

SchedVerdict rta_fp_preemptive(const TaskSet& tasks, std::span<const std::size_t> order) {
    require_tasks(tasks, order);
    SchedVerdict verdict{true, {}, "ok"};
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& task = tasks[order[k]];
        Time response = task.wcet();
        bool converged = false;
        while (true) {
            Time next = task.wcet();
            for (std::size_t h = 0; h < k; ++h) {
                const auto& hp = tasks[order[h]];
                next += ceil_div(response, hp.period()) * hp.wcet();
            }
            if (next > task.deadline()) break;
            if (next == response) {
                converged = true;
                break;
            }
            response = next;
        }
        if (converged) {
            verdict.responses[task.id()] = response;
        } else {
            verdict.schedulable = false;
            verdict.reason = "deadline-exceeded";
        }
    }
    return verdict;
}

SchedVerdict rta_fp_nonpreemptive(const TaskSet& tasks, std::span<const std::size_t> order,
                                  Time cap) {
    require_tasks(tasks, order);
    SchedVerdict verdict{true, {}, "ok"};
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& task = tasks[order[k]];
        const auto higher = order.subspan(0, k);
        const auto equal_or_higher = order.subspan(0, k + 1);

        Time blocking = 0;
        for (std::size_t l = k + 1; l < order.size(); ++l)
            blocking = std::max(blocking, tasks[order[l]].wcet() - 1);

        Rational hep_load = 0;
        for (auto j : equal_or_higher) hep_load += tasks[j].seq_utilization();
        // An overloaded level-i busy period never closes; the job loop below
        // runs until some job misses instead.
        // At load exactly 1 the busy period may never close either, but the
        // start-time recurrence shifts by one level hyperperiod every H / T_i
        // jobs, so those jobs cover every distinct response.
        std::optional<Time> level_busy;
        Time jobs = 0;
        if (hep_load < 1) {
            level_busy = busy_period(tasks, equal_or_higher, blocking, cap);
            if (!level_busy)
                throw Error(ErrorCode::BusyPeriodOverflow,
                            "level busy period of task " + std::to_string(task.id()));
            jobs = ceil_div(*level_busy, task.period());
        } else if (hep_load == 1) {
            std::vector<std::size_t> level(equal_or_higher.begin(), equal_or_higher.end());
            const auto h = hyperperiod(tasks.subset(level), cap);
            if (!h)
                throw Error(ErrorCode::BusyPeriodOverflow,
                            "level hyperperiod of task " + std::to_string(task.id()));
            level_busy = *h;
            jobs = *h / task.period();
        }

        Time worst = 0;
        bool missed = false;
        for (Time q = 0; level_busy ? q < jobs : true; ++q) {
            if (q * task.period() > cap)
                throw Error(ErrorCode::BusyPeriodOverflow,
                            "job index of task " + std::to_string(task.id()));
            // Start time of job q: blocking, earlier jobs of the task, and every
            // higher-priority release up to and including the start tick.
            Time start = blocking + q * task.wcet();
            for (auto j : higher) start += tasks[j].wcet();
            // The iterate only grows, so once it already implies a miss the
            // fixed point (possibly unbounded under hp overload) is not needed.
            const Time late_start = task.deadline() + q * task.period() - task.wcet();
            while (start <= late_start) {
                Time next = blocking + q * task.wcet();
                for (auto j : higher) next += (start / tasks[j].period() + 1) * tasks[j].wcet();
                if (next > cap)
                    throw Error(ErrorCode::BusyPeriodOverflow,
                                "start time of task " + std::to_string(task.id()));
                if (next == start) break;
                start = next;
            }
            const Time response = start + task.wcet() - q * task.period();
            worst = std::max(worst, response);
            if (response > task.deadline()) {
                missed = true;
                break;
            }
        }
        verdict.responses[task.id()] = worst;
        if (missed) {
            verdict.schedulable = false;
            verdict.reason = "deadline-exceeded";
        }
    }
    return verdict;
}

SchedVerdict edf_utilization_test(const TaskSet& tasks, const Rational& bound) {
    for (const auto& t : tasks)
        if (!t.implicit_deadline())
            throw Error(ErrorCode::ConstrainedDeadlinePresent,
                        "task " + std::to_string(t.id()) + " has D < T");
    if (tasks.total_seq_utilization() <= bound) return {true, {}, "ok"};
    return {false, {}, "utilization-exceeded"};
}

SchedVerdict edf_demand_test(const TaskSet& tasks, Time cap) {
    if (tasks.empty()) throw Error(ErrorCode::EmptyTaskSet, "no tasks to analyse");
    if (tasks.total_seq_utilization() > 1) return {false, {}, "utilization-exceeded"};

    std::vector<std::size_t> all(tasks.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto horizon = busy_period(tasks, all, 0, cap);
    if (!horizon) throw Error(ErrorCode::HorizonOverflow, "synchronous busy period exceeds cap");

    std::set<Time> checkpoints;
    for (const auto& t : tasks)
        for (Time d = t.deadline(); d <= *horizon; d += t.period()) checkpoints.insert(d);

    for (auto point : checkpoints) {
        Time demand = 0;
        for (const auto& t : tasks)
            if (point >= t.deadline())
                demand += ((point - t.deadline()) / t.period() + 1) * t.wcet();
        if (demand > point) return {false, {}, "demand-exceeded"};
    }
    return {true, {}, "ok"};
}

}  // namespace gangsched

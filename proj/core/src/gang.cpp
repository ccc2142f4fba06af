#include <gangsched/gang.hpp>

#include <algorithm>

namespace gangsched {

bool pairwise_sequential(std::span<const GangTask> tasks, int partition_volume) {
    for (std::size_t x = 0; x < tasks.size(); ++x)
        for (std::size_t y = x + 1; y < tasks.size(); ++y)
            if (tasks[x].volume() + tasks[y].volume() <= partition_volume) return false;
    return true;
}

SchedVerdict baseline_gang_rta_fp(const TaskSet& tasks, int partition_volume,
                                  std::span<const std::size_t> order, Preemption preemption) {
    if (preemption == Preemption::NonPreemptive)
        throw Error(ErrorCode::NonPreemptiveUnsupported,
                    "the baseline gang test only covers preemptive FP");
    if (tasks.empty()) throw Error(ErrorCode::EmptyTaskSet, "no tasks to analyse");
    if (order.size() != tasks.size())
        throw Error(ErrorCode::InvalidConfig, "priority order is not a permutation of the tasks");

    SchedVerdict verdict{true, {}, "ok"};
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& task = tasks[order[k]];
        if (task.volume() > partition_volume) {
            verdict.schedulable = false;
            verdict.reason = "volume-exceeds-partition";
            continue;
        }
        int hp_volume = 0;
        for (std::size_t h = 0; h < k; ++h) hp_volume += tasks[order[h]].volume();
        if (hp_volume <= partition_volume - task.volume()) {
            verdict.responses[task.id()] = task.wcet();
            continue;
        }

        // The task waits only while at least `blocking_width` processors are
        // taken by higher-priority jobs; a job of width m_j can cover at most
        // min(m_j, blocking_width) of them in any tick.
        const Time blocking_width = partition_volume - task.volume() + 1;
        Time response = task.wcet();
        bool converged = false;
        while (true) {
            Time area = 0;
            for (std::size_t h = 0; h < k; ++h) {
                const auto& hp = tasks[order[h]];
                const Time width = std::min<Time>(hp.volume(), blocking_width);
                area += width * ((response + hp.period() - 1) / hp.period()) * hp.wcet();
            }
            const Time next = task.wcet() + area / blocking_width;
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

void GangTestRegistry::add(GangTestHandle handle) { tests_.push_back(std::move(handle)); }

const GangTestHandle* GangTestRegistry::find(const std::string& name) const noexcept {
    for (const auto& t : tests_)
        if (t.name == name) return &t;
    return nullptr;
}

const GangTestHandle* GangTestRegistry::find_for(const SchedulerKind& kind) const noexcept {
    for (const auto& t : tests_)
        if (std::find(t.applicable.begin(), t.applicable.end(), kind) != t.applicable.end())
            return &t;
    return nullptr;
}

GangTestHandle baseline_gang_handle() {
    return {kBaselineGangTest,
            {SchedulerKind{Policy::FixedPriority, Preemption::Preemptive, Scope::Gang}},
            [](const TaskSet& tasks, int volume, std::span<const std::size_t> order) {
                return baseline_gang_rta_fp(tasks, volume, order, Preemption::Preemptive);
            }};
}

GangTestHandle reject_gang_handle() {
    return {kRejectGangTest,
            {},
            [](const TaskSet&, int, std::span<const std::size_t>) {
                return SchedVerdict{false, {}, "no-sound-gang-test"};
            }};
}

GangTestHandle resolve_gang_test(const SchedulerKind& kind, const GangTestRegistry& registry) {
    if (const auto* registered = registry.find_for(kind)) return *registered;
    if (kind.policy == Policy::FixedPriority && kind.preemptive()) return baseline_gang_handle();
    return reject_gang_handle();
}

}  // namespace gangsched

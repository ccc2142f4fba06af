#include <gangsched/partition.hpp>

#include <map>

namespace gangsched {

void validate_scheduler_kind(const SchedulerKind& kind) {
    if (kind.policy == Policy::Edf && kind.preemption == Preemption::NonPreemptive)
        throw Error(ErrorCode::InvalidConfig, "non-preemptive EDF is not supported");
}

std::string to_string(const SchedulerKind& kind) {
    std::string s = kind.scope == Scope::Gang ? "gang-" : "uni-";
    s += kind.policy == Policy::Edf ? "edf" : "fp";
    s += kind.preemptive() ? "-p" : "-np";
    return s;
}

int PartitionPlan::used_processors() const noexcept {
    int sum = 0;
    for (const auto& p : partitions) sum += p.volume;
    return sum;
}

const Partition* PartitionPlan::partition_of(TaskId id) const noexcept {
    for (const auto& p : partitions)
        for (auto m : p.members)
            if (m == id) return &p;
    return nullptr;
}

std::string check_plan(const PartitionPlan& plan, const TaskSet& tasks, int processors) {
    if (plan.unassigned < 0) return "negative unassigned processor count";
    if (plan.used_processors() + plan.unassigned != processors)
        return "partition volumes plus unassigned processors differ from M";
    std::map<TaskId, int> seen;
    for (const auto& p : plan.partitions) {
        if (p.volume < 1) return "partition " + std::to_string(p.id) + " has volume < 1";
        for (auto id : p.members) {
            auto idx = tasks.index_of(id);
            if (!idx) return "unknown task " + std::to_string(id) + " in a partition";
            if (tasks[*idx].volume() > p.volume)
                return "task " + std::to_string(id) + " is wider than its partition";
            if (++seen[id] > 1) return "task " + std::to_string(id) + " assigned twice";
        }
    }
    for (const auto& t : tasks)
        if (!seen.count(t.id())) return "task " + std::to_string(t.id()) + " unassigned";
    return {};
}

TaskSet partition_tasks(const Partition& partition, const TaskSet& tasks) {
    std::vector<GangTask> out;
    out.reserve(partition.members.size());
    for (auto id : partition.members) out.push_back(tasks.by_id(id));
    return TaskSet(std::move(out));
}

}  // namespace gangsched

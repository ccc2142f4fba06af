#pragma once

#include <gangsched/task.hpp>

#include <string>
#include <vector>

namespace gangsched {

enum class Policy { FixedPriority, Edf };
enum class Preemption { Preemptive, NonPreemptive };
enum class Scope { Uniprocessor, Gang };

/// How jobs inside one partition are dispatched. Uniprocessor scope treats
/// the partition as a single serialized resource; gang scope lets jobs whose
/// volumes fit run side by side.
struct SchedulerKind {
    Policy policy = Policy::FixedPriority;
    Preemption preemption = Preemption::Preemptive;
    Scope scope = Scope::Uniprocessor;

    bool preemptive() const noexcept { return preemption == Preemption::Preemptive; }

    friend bool operator==(const SchedulerKind&, const SchedulerKind&) = default;
};

/// Throws InvalidConfig for non-preemptive EDF.
void validate_scheduler_kind(const SchedulerKind& kind);

std::string to_string(const SchedulerKind& kind);

struct Partition {
    int id = 0;
    int volume = 0;
    std::vector<TaskId> members;
    SchedulerKind scheduler;
};

struct PartitionPlan {
    std::vector<Partition> partitions;
    int unassigned = 0;

    int used_processors() const noexcept;
    /// Number of partitions.
    std::size_t size() const noexcept { return partitions.size(); }
    /// The partition holding `id`, or nullptr.
    const Partition* partition_of(TaskId id) const noexcept;
};

/// Checks the structural plan invariants against the platform and task set:
/// volumes plus unassigned processors sum to M, every task sits in exactly
/// one partition, and no member is wider than its partition. Returns an empty
/// string when they hold, otherwise a description of the first violation.
std::string check_plan(const PartitionPlan& plan, const TaskSet& tasks, int processors);

/// Tasks of one partition, in membership order.
TaskSet partition_tasks(const Partition& partition, const TaskSet& tasks);

}  // namespace gangsched

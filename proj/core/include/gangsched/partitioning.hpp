#pragma once

#include <gangsched/gang.hpp>
#include <gangsched/partition.hpp>
#include <gangsched/task.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gangsched {

/// Accepts or rejects a candidate task subset on a partition of the given
/// volume. Must be sound for the partition's online scheduler.
using PartitionTest = std::function<bool(const TaskSet& subset, int partition_volume)>;

/// Result of a partitioning run. Exactly one of `plan` / `failed_task` is set.
struct PartitionOutcome {
    std::optional<PartitionPlan> plan;
    std::optional<TaskId> failed_task;
    /// Whether the one-shot volume increase of the last partition fired.
    bool volume_increased = false;

    bool ok() const noexcept { return plan.has_value(); }
    explicit operator bool() const noexcept { return ok(); }
};

/// FFDV processing order: volume descending, then period ascending, then id
/// ascending.
std::vector<std::size_t> ffdv_order(const TaskSet& tasks);

/// First Fit Decreasing Volume. Each task (in ffdv_order) joins the first
/// partition whose test accepts the union; otherwise it opens a partition of
/// its own volume from the spare processors, and the run fails when too few
/// remain.
PartitionOutcome ffdv(const TaskSet& tasks, int processors, const PartitionTest& test,
                      SchedulerKind kind = {});

/// The exact serialized-partition test for `kind` (FP-P RTA, FP-NP RTA, or
/// EDF utilization/demand). Priorities are deadline monotonic within the
/// candidate subset.
PartitionTest uniprocessor_test(const SchedulerKind& kind);

/// Strict partitioning with uniprocessor schedulers per partition.
PartitionOutcome sp_u(const TaskSet& tasks, int processors, const SchedulerKind& kind);

/// Strict partitioning with gang schedulers per partition: the exact
/// uniprocessor test whenever the candidate subset is pairwise sequential on
/// the partition, `gang_test` otherwise, plus a one-shot growth of the last
/// partition by the spare processors when 0 < M' < m_i.
PartitionOutcome sp_g(const TaskSet& tasks, int processors, const SchedulerKind& kind,
                      const GangTestHandle& gang_test);

enum class Variant { SpU, SpG, SpB };

std::string to_string(Variant variant);

struct PartitionerConfig {
    Variant variant = Variant::SpU;
    SchedulerKind scheduler;
    /// Name of the registered gang test for SP-G; empty selects the default.
    std::string gang_test;
    /// Utilization bound of the per-partition scheduler (SP-B).
    Rational utilization_bound = 1;
};

/// Throws InvalidConfig when the combination cannot be analysed.
void validate_config(const PartitionerConfig& config);

/// Verdict of one configured partitioner on one task set.
struct PartitionerResult {
    bool accepted = false;
    /// Plan for SP-U / SP-G successes.
    std::optional<PartitionPlan> plan;
    std::optional<TaskId> failed_task;
    std::string detail;
};

PartitionerResult run_partitioner(const PartitionerConfig& config, const TaskSet& tasks,
                                  int processors, const GangTestRegistry& registry);

}  // namespace gangsched

#pragma once

#include <gangsched/partition.hpp>
#include <gangsched/uniproc.hpp>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gangsched {

/// True iff no two distinct tasks can run side by side on `partition_volume`
/// processors, i.e. every pair has m_x + m_y > volume. Singletons qualify.
bool pairwise_sequential(std::span<const GangTask> tasks, int partition_volume);
inline bool pairwise_sequential(const TaskSet& tasks, int partition_volume) {
    return pairwise_sequential(tasks.tasks(), partition_volume);
}

/// Sufficient response-time test for preemptive global gang FP on a
/// partition of `partition_volume` processors. A task whose higher-priority
/// tasks fit next to it gets R = C; otherwise
///   R = C_k + floor(sum_{hp} m_j ceil(R/T_j) C_j / (volume - m_k + 1)).
/// Throws NonPreemptiveUnsupported for the non-preemptive case.
SchedVerdict baseline_gang_rta_fp(const TaskSet& tasks, int partition_volume,
                                  std::span<const std::size_t> order,
                                  Preemption preemption = Preemption::Preemptive);

using GangTestFn = std::function<SchedVerdict(const TaskSet& tasks, int partition_volume,
                                              std::span<const std::size_t> order)>;

/// A global gang schedulability test usable as the SP-G fallback. Registered
/// tests must be sound: an accept means no job of the set can miss.
struct GangTestHandle {
    std::string name;
    std::vector<SchedulerKind> applicable;
    GangTestFn test;

    SchedVerdict operator()(const TaskSet& tasks, int partition_volume,
                            std::span<const std::size_t> order) const {
        return test(tasks, partition_volume, order);
    }
};

inline constexpr const char* kBaselineGangTest = "baseline-gang-fp";
inline constexpr const char* kRejectGangTest = "reject";

class GangTestRegistry {
  public:
    void add(GangTestHandle handle);
    const GangTestHandle* find(const std::string& name) const noexcept;
    /// First registered test applicable to `kind`, in registration order.
    const GangTestHandle* find_for(const SchedulerKind& kind) const noexcept;
    bool empty() const noexcept { return tests_.empty(); }

  private:
    std::vector<GangTestHandle> tests_;
};

GangTestHandle baseline_gang_handle();
GangTestHandle reject_gang_handle();

/// The registered test for `kind` if any; otherwise the baseline for
/// preemptive FP and the always-unschedulable handle for every other kind.
GangTestHandle resolve_gang_test(const SchedulerKind& kind, const GangTestRegistry& registry);

}  // namespace gangsched

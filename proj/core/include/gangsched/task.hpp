#pragma once

#include <gangsched/error.hpp>

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace gangsched {

using Time = std::int64_t;
using TaskId = int;
using Rational = mpq_class;

/// Default cap on simulation horizons and busy-period lengths, in ticks.
inline constexpr Time kDefaultTickCap = 10'000'000;

/// num/den in canonical form (GMP leaves two-argument construction
/// uncanonicalized, which breaks comparisons and arithmetic).
inline Rational make_rational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// A sporadic rigid gang task: every job needs `volume` processors at once
/// for `wcet` ticks, jobs are separated by at least `period`, and each must
/// finish within `deadline` of its release.
///
/// Instances are validated on construction (see validate_task) and immutable.
class GangTask {
  public:
    GangTask(TaskId id, Time wcet, Time period, Time deadline, int volume);

    TaskId id() const noexcept { return id_; }
    Time wcet() const noexcept { return wcet_; }
    Time period() const noexcept { return period_; }
    Time deadline() const noexcept { return deadline_; }
    int volume() const noexcept { return volume_; }

    bool implicit_deadline() const noexcept { return deadline_ == period_; }

    /// u_i = C/T, the load seen by one processor of the gang.
    Rational seq_utilization() const { return make_rational(wcet_, period_); }
    /// U_i = m * C / T, processor-time demand per tick.
    Rational utilization() const { return make_rational(wcet_ * volume_, period_); }

    friend bool operator==(const GangTask&, const GangTask&) = default;

  private:
    TaskId id_;
    Time wcet_;
    Time period_;
    Time deadline_;
    int volume_;
};

/// Builds a GangTask, throwing Error with NonPositiveField,
/// WcetExceedsDeadline or DeadlineExceedsPeriod on invalid input.
GangTask validate_task(TaskId id, Time wcet, Time period, Time deadline, int volume);

/// Ordered collection of tasks with unique ids. Aggregates are computed on
/// demand from the stored tasks.
class TaskSet {
  public:
    TaskSet() = default;
    explicit TaskSet(std::vector<GangTask> tasks);
    TaskSet(std::initializer_list<GangTask> tasks);

    std::size_t size() const noexcept { return tasks_.size(); }
    bool empty() const noexcept { return tasks_.empty(); }
    const GangTask& operator[](std::size_t i) const { return tasks_[i]; }
    auto begin() const noexcept { return tasks_.begin(); }
    auto end() const noexcept { return tasks_.end(); }
    std::span<const GangTask> tasks() const noexcept { return tasks_; }

    /// Index of the task with the given id, if present.
    std::optional<std::size_t> index_of(TaskId id) const;
    const GangTask& by_id(TaskId id) const;

    Rational total_utilization() const;
    Rational total_seq_utilization() const;
    /// 0 for an empty set.
    int max_volume() const noexcept;
    int min_volume() const noexcept;
    Time max_period() const noexcept;

    TaskSet subset(std::span<const std::size_t> indices) const;
    TaskSet with(const GangTask& extra) const;

    friend bool operator==(const TaskSet&, const TaskSet&) = default;

  private:
    std::vector<GangTask> tasks_;
};

struct Platform {
    int processors = 1;
};

/// Deadline-monotonic priority order: indices into `tasks`, sorted by
/// non-decreasing relative deadline with ties broken by ascending task id.
/// Position 0 is the highest priority.
std::vector<std::size_t> dm_priority_order(const TaskSet& tasks);

/// Least common multiple of all periods, or std::nullopt once it exceeds
/// `cap`. An empty set has hyperperiod 1.
std::optional<Time> hyperperiod(const TaskSet& tasks, Time cap = kDefaultTickCap);

}  // namespace gangsched

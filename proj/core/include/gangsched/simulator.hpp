#pragma once

#include <gangsched/partition.hpp>
#include <gangsched/task.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gangsched {

enum class ReleaseMode { Synchronous, Explicit };

/// Periodic releases at offset + k T over ticks [0, horizon). Synchronous mode
/// uses offset 0 for every task; explicit mode takes offsets from the map and
/// does not release tasks missing from it.
struct ReleasePattern {
    ReleaseMode mode = ReleaseMode::Synchronous;
    std::map<TaskId, Time> offsets;
    Time horizon = 1;

    static ReleasePattern synchronous(Time horizon);
    static ReleasePattern explicit_offsets(std::map<TaskId, Time> offsets, Time horizon);
};

enum class EventKind { Release, Start, Finish, DeadlineMiss };

const char* to_string(EventKind kind) noexcept;

struct TraceEvent {
    Time tick = 0;
    EventKind kind = EventKind::Release;
    TaskId task = 0;
    int partition = 0;
    int processors = 0;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct JobRecord {
    TaskId task = 0;
    int partition = 0;
    Time release = 0;
    Time absolute_deadline = 0;
    /// First tick the job executed.
    std::optional<Time> start;
    /// Tick at which the job completed (end of its last executed tick).
    std::optional<Time> finish;
    /// Number of separate execution intervals.
    int segments = 0;

    std::optional<Time> response() const {
        if (!finish) return std::nullopt;
        return *finish - release;
    }
};

struct DeadlineMiss {
    TaskId task = 0;
    Time tick = 0;
};

/// Tasks running in one partition during one tick: (task id, processors).
using TickOccupancy = std::vector<std::pair<TaskId, int>>;

struct SimTrace {
    std::vector<TraceEvent> events;
    std::vector<JobRecord> jobs;
    /// occupancy[partition index][tick]; empty unless requested.
    std::vector<std::vector<TickOccupancy>> occupancy;
    std::optional<DeadlineMiss> first_miss;
    Time horizon = 0;

    bool no_miss() const noexcept { return !first_miss.has_value(); }
};

struct SimOptions {
    /// Priority ranking for FP schedulers, highest first. Tasks absent from
    /// the list fall back to deadline monotonic order after the listed ones.
    std::vector<TaskId> priority;
    bool record_occupancy = false;
    bool stop_at_first_miss = false;
    Time cap = kDefaultTickCap;
};

/// Simulates every partition of `plan` independently with that partition's
/// scheduler kind.
///
/// Per tick: releases happen first, then unfinished jobs whose deadline is
/// this tick are flagged as misses (they keep running), then the dispatcher
/// picks the running set:
///   uniprocessor FP-P   highest-priority pending job
///   uniprocessor FP-NP  the started job, else the highest-priority pending
///   uniprocessor EDF-P  earliest absolute deadline, ties by task id
///   gang FP-P / EDF-P   jobs in priority order, each placed iff its volume
///                       still fits after the jobs before it
///   gang FP-NP          started jobs keep their processors, then pending jobs
///                       in priority order start iff they fit
/// Only the oldest unfinished job of a task is eligible.
///
/// Throws HorizonOverflow (horizon above options.cap) and
/// VolumeExceedsPartition.
SimTrace simulate(const PartitionPlan& plan, const TaskSet& tasks,
                  const ReleasePattern& releases, const SimOptions& options = {});

/// Global scheduling of the whole set on `processors` processors, i.e. one
/// partition holding every task.
SimTrace simulate_global(int processors, const SchedulerKind& kind, const TaskSet& tasks,
                         const ReleasePattern& releases, const SimOptions& options = {});

/// `tick,kind,task,partition,processors`, header line first, one event per line.
void write_trace(std::ostream& out, const SimTrace& trace);

/// Checks the occupancy invariants of a recorded trace against the plan.
/// Returns an empty string when they hold.
std::string check_trace(const SimTrace& trace, const PartitionPlan& plan, const TaskSet& tasks);

/// Priority ranking (task ids, highest first) for an index order.
std::vector<TaskId> ranking_of(const TaskSet& tasks, std::span<const std::size_t> order);

}  // namespace gangsched

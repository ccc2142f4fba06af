#include <gangsched/simulator.hpp>

#include <algorithm>
#include <map>
#include <ostream>

namespace gangsched {

ReleasePattern ReleasePattern::synchronous(Time horizon) {
    return {ReleaseMode::Synchronous, {}, horizon};
}

ReleasePattern ReleasePattern::explicit_offsets(std::map<TaskId, Time> offsets, Time horizon) {
    return {ReleaseMode::Explicit, std::move(offsets), horizon};
}

const char* to_string(EventKind kind) noexcept {
    switch (kind) {
    case EventKind::Release: return "release";
    case EventKind::Start: return "start";
    case EventKind::Finish: return "finish";
    case EventKind::DeadlineMiss: return "miss";
    }
    return "?";
}

std::vector<TaskId> ranking_of(const TaskSet& tasks, std::span<const std::size_t> order) {
    std::vector<TaskId> ids;
    ids.reserve(order.size());
    for (auto i : order) ids.push_back(tasks[i].id());
    return ids;
}

namespace {

struct ActiveJob {
    std::size_t task = 0;  // index into the partition's task set
    Time release = 0;
    Time deadline = 0;
    Time remaining = 0;
    bool started = false;
    bool ran_last_tick = false;
    bool miss_flagged = false;
    std::size_t record = 0;
};

class PartitionSim {
  public:
    PartitionSim(const TaskSet& tasks, int volume, const SchedulerKind& kind, int partition,
                 const ReleasePattern& releases, const SimOptions& options, SimTrace& trace)
        : tasks_(tasks), volume_(volume), kind_(kind), partition_(partition),
          options_(options), trace_(trace) {
        validate_scheduler_kind(kind);
        for (const auto& t : tasks)
            if (t.volume() > volume)
                throw Error(ErrorCode::VolumeExceedsPartition,
                            "task " + std::to_string(t.id()) + " is wider than partition " +
                                std::to_string(partition));

        // Listed ids first, then deadline monotonic for the rest.
        rank_.assign(tasks.size(), 0);
        std::map<TaskId, std::size_t> listed;
        for (std::size_t r = 0; r < options.priority.size(); ++r)
            listed.emplace(options.priority[r], r);
        std::size_t next_rank = options.priority.size();
        for (auto i : dm_priority_order(tasks)) {
            auto it = listed.find(tasks[i].id());
            rank_[i] = it != listed.end() ? it->second : next_rank++;
        }

        next_release_.assign(tasks.size(), -1);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (releases.mode == ReleaseMode::Synchronous) {
                next_release_[i] = 0;
            } else if (auto it = releases.offsets.find(tasks[i].id()); it != releases.offsets.end()) {
                if (it->second < 0)
                    throw Error(ErrorCode::InvalidConfig, "negative release offset");
                next_release_[i] = it->second;
            }
        }
        if (options.record_occupancy) occupancy_.reserve(static_cast<std::size_t>(releases.horizon));
    }

    void run(Time horizon) {
        for (Time tick = 0; tick < horizon; ++tick) {
            release_jobs(tick);
            if (flag_misses(tick) && options_.stop_at_first_miss) return;
            dispatch(tick);
        }
        // Deadlines that fall on the horizon itself are still checked.
        for (auto& job : active_)
            if (job.deadline <= horizon && !job.miss_flagged) flag(job, job.deadline);
    }

    std::vector<TickOccupancy> take_occupancy() { return std::move(occupancy_); }

  private:
    void emit(Time tick, EventKind kind, std::size_t task) {
        trace_.events.push_back({tick, kind, tasks_[task].id(), partition_, tasks_[task].volume()});
    }

    void release_jobs(Time tick) {
        for (std::size_t i = 0; i < tasks_.size(); ++i) {
            if (next_release_[i] != tick) continue;
            const auto& t = tasks_[i];
            ActiveJob job;
            job.task = i;
            job.release = tick;
            job.deadline = tick + t.deadline();
            job.remaining = t.wcet();
            job.record = trace_.jobs.size();
            trace_.jobs.push_back({t.id(), partition_, tick, job.deadline, {}, {}, 0});
            active_.push_back(job);
            emit(tick, EventKind::Release, i);
            next_release_[i] += t.period();
        }
    }

    void flag(ActiveJob& job, Time tick) {
        job.miss_flagged = true;
        emit(tick, EventKind::DeadlineMiss, job.task);
        const TaskId id = tasks_[job.task].id();
        if (!trace_.first_miss || tick < trace_.first_miss->tick ||
            (tick == trace_.first_miss->tick && id < trace_.first_miss->task))
            trace_.first_miss = DeadlineMiss{id, tick};
    }

    bool flag_misses(Time tick) {
        bool any = false;
        for (auto& job : active_) {
            if (job.deadline == tick && !job.miss_flagged) {
                flag(job, tick);
                any = true;
            }
        }
        return any;
    }

    // Strict weak order of dispatch preference among eligible jobs.
    bool prefer(const ActiveJob& a, const ActiveJob& b) const {
        if (kind_.policy == Policy::Edf) {
            if (a.deadline != b.deadline) return a.deadline < b.deadline;
            const auto ia = tasks_[a.task].id(), ib = tasks_[b.task].id();
            if (ia != ib) return ia < ib;
            return a.release < b.release;
        }
        if (rank_[a.task] != rank_[b.task]) return rank_[a.task] < rank_[b.task];
        return a.release < b.release;
    }

    void dispatch(Time tick) {
        // Only the oldest unfinished job of each task is eligible; active_ is
        // kept in release order.
        std::vector<ActiveJob*> eligible;
        std::vector<bool> seen(tasks_.size(), false);
        for (auto& job : active_) {
            if (seen[job.task]) continue;
            seen[job.task] = true;
            eligible.push_back(&job);
        }
        std::sort(eligible.begin(), eligible.end(),
                  [&](const ActiveJob* a, const ActiveJob* b) { return prefer(*a, *b); });

        std::vector<ActiveJob*> running;
        const bool nonpreemptive = !kind_.preemptive();
        if (kind_.scope == Scope::Uniprocessor) {
            ActiveJob* pick = nullptr;
            if (nonpreemptive)
                for (auto* job : eligible)
                    if (job->started) pick = job;
            if (!pick && !eligible.empty()) pick = eligible.front();
            if (pick) running.push_back(pick);
        } else {
            int free = volume_;
            if (nonpreemptive) {
                for (auto* job : eligible) {
                    if (job->started) {
                        running.push_back(job);
                        free -= tasks_[job->task].volume();
                    }
                }
            }
            for (auto* job : eligible) {
                if (nonpreemptive && job->started) continue;
                const int width = tasks_[job->task].volume();
                if (width <= free) {
                    running.push_back(job);
                    free -= width;
                }
            }
        }

        TickOccupancy occupied;
        for (auto* job : running) {
            auto& record = trace_.jobs[job->record];
            if (!job->ran_last_tick) {
                emit(tick, EventKind::Start, job->task);
                ++record.segments;
                if (!record.start) record.start = tick;
            }
            job->started = true;
            occupied.emplace_back(tasks_[job->task].id(), tasks_[job->task].volume());
        }
        for (auto& job : active_) job.ran_last_tick = false;
        for (auto* job : running) {
            job->ran_last_tick = true;
            if (--job->remaining == 0) {
                trace_.jobs[job->record].finish = tick + 1;
                emit(tick + 1, EventKind::Finish, job->task);
            }
        }
        std::erase_if(active_, [](const ActiveJob& j) { return j.remaining == 0; });
        if (options_.record_occupancy) occupancy_.push_back(std::move(occupied));
    }

    const TaskSet& tasks_;
    int volume_;
    SchedulerKind kind_;
    int partition_;
    const SimOptions& options_;
    SimTrace& trace_;
    std::vector<std::size_t> rank_;
    std::vector<Time> next_release_;
    std::vector<ActiveJob> active_;
    std::vector<TickOccupancy> occupancy_;
};

}  // namespace

SimTrace simulate(const PartitionPlan& plan, const TaskSet& tasks,
                  const ReleasePattern& releases, const SimOptions& options) {
    if (releases.horizon < 1) throw Error(ErrorCode::InvalidConfig, "horizon must be >= 1");
    if (releases.horizon > options.cap)
        throw Error(ErrorCode::HorizonOverflow,
                    "horizon " + std::to_string(releases.horizon) + " exceeds cap");

    SimTrace trace;
    trace.horizon = releases.horizon;
    for (std::size_t p = 0; p < plan.partitions.size(); ++p) {
        const auto& partition = plan.partitions[p];
        const auto members = partition_tasks(partition, tasks);
        PartitionSim sim(members, partition.volume, partition.scheduler, static_cast<int>(p),
                         releases, options, trace);
        sim.run(releases.horizon);
        if (options.record_occupancy) trace.occupancy.push_back(sim.take_occupancy());
    }
    std::stable_sort(trace.events.begin(), trace.events.end(),
                     [](const TraceEvent& a, const TraceEvent& b) { return a.tick < b.tick; });
    return trace;
}

SimTrace simulate_global(int processors, const SchedulerKind& kind, const TaskSet& tasks,
                         const ReleasePattern& releases, const SimOptions& options) {
    PartitionPlan plan;
    Partition all;
    all.volume = processors;
    all.scheduler = kind;
    for (const auto& t : tasks) all.members.push_back(t.id());
    plan.partitions.push_back(std::move(all));
    return simulate(plan, tasks, releases, options);
}

void write_trace(std::ostream& out, const SimTrace& trace) {
    out << "tick,kind,task,partition,processors\n";
    for (const auto& e : trace.events)
        out << e.tick << ',' << to_string(e.kind) << ',' << e.task << ',' << e.partition << ','
            << e.processors << '\n';
}

std::string check_trace(const SimTrace& trace, const PartitionPlan& plan, const TaskSet& tasks) {
    if (!trace.occupancy.empty()) {
        if (trace.occupancy.size() != plan.partitions.size())
            return "occupancy does not cover every partition";
        for (std::size_t p = 0; p < plan.partitions.size(); ++p) {
            const auto& partition = plan.partitions[p];
            for (std::size_t tick = 0; tick < trace.occupancy[p].size(); ++tick) {
                const auto& slot = trace.occupancy[p][tick];
                int used = 0;
                for (const auto& [id, width] : slot) {
                    if (width != tasks.by_id(id).volume())
                        return "task " + std::to_string(id) + " runs on the wrong processor count";
                    used += width;
                }
                if (used > partition.volume)
                    return "partition " + std::to_string(p) + " over-allocated at tick " +
                           std::to_string(tick);
                if (partition.scheduler.scope == Scope::Uniprocessor && slot.size() > 1)
                    return "serialized partition " + std::to_string(p) + " runs two jobs at tick " +
                           std::to_string(tick);
            }
        }
    }
    for (const auto& job : trace.jobs) {
        const auto& kind = plan.partitions.at(static_cast<std::size_t>(job.partition)).scheduler;
        if (!kind.preemptive() && job.segments > 1)
            return "non-preemptive job of task " + std::to_string(job.task) + " was split";
    }
    return {};
}

}  // namespace gangsched

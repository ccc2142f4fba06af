#include <gangsched/partitioning.hpp>

#include <gangsched/bounds.hpp>

#include <algorithm>
#include <numeric>

namespace gangsched {

std::vector<std::size_t> ffdv_order(const TaskSet& tasks) {
    std::vector<std::size_t> order(tasks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = tasks[a];
        const auto& y = tasks[b];
        if (x.volume() != y.volume()) return x.volume() > y.volume();
        if (x.period() != y.period()) return x.period() < y.period();
        return x.id() < y.id();
    });
    return order;
}

namespace {

PartitionOutcome run_ffdv(const TaskSet& tasks, int processors, const PartitionTest& test,
                          const SchedulerKind& kind, bool allow_volume_increase) {
    if (processors < 1) throw Error(ErrorCode::InvalidConfig, "platform needs at least one processor");

    PartitionOutcome outcome;
    PartitionPlan plan;
    plan.unassigned = processors;

    for (auto index : ffdv_order(tasks)) {
        const auto& task = tasks[index];

        bool placed = false;
        for (auto& partition : plan.partitions) {
            if (task.volume() > partition.volume) continue;
            if (test(partition_tasks(partition, tasks).with(task), partition.volume)) {
                partition.members.push_back(task.id());
                placed = true;
                break;
            }
        }
        if (placed) continue;

        if (task.volume() <= plan.unassigned) {
            Partition fresh;
            fresh.id = static_cast<int>(plan.partitions.size());
            fresh.volume = task.volume();
            fresh.members = {task.id()};
            fresh.scheduler = kind;
            plan.partitions.push_back(std::move(fresh));
            plan.unassigned -= task.volume();
            continue;
        }

        // Here M' < m_i. Grow the last partition by every spare processor if
        // that makes the union schedulable; this can only happen once.
        if (allow_volume_increase && plan.unassigned > 0 && !plan.partitions.empty()) {
            auto& last = plan.partitions.back();
            const int enlarged = last.volume + plan.unassigned;
            if (task.volume() <= enlarged &&
                test(partition_tasks(last, tasks).with(task), enlarged)) {
                last.volume = enlarged;
                last.members.push_back(task.id());
                plan.unassigned = 0;
                outcome.volume_increased = true;
                continue;
            }
        }

        outcome.failed_task = task.id();
        return outcome;
    }
    outcome.plan = std::move(plan);
    return outcome;
}

}  // namespace

PartitionOutcome ffdv(const TaskSet& tasks, int processors, const PartitionTest& test,
                      SchedulerKind kind) {
    return run_ffdv(tasks, processors, test, kind, false);
}

PartitionTest uniprocessor_test(const SchedulerKind& kind) {
    validate_scheduler_kind(kind);
    if (kind.policy == Policy::Edf) {
        return [](const TaskSet& subset, int) {
            const bool implicit = std::all_of(subset.begin(), subset.end(),
                                              [](const GangTask& t) { return t.implicit_deadline(); });
            if (implicit) return edf_utilization_test(subset).schedulable;
            try {
                return edf_demand_test(subset).schedulable;
            } catch (const Error& e) {
                if (e.code() == ErrorCode::HorizonOverflow) return false;
                throw;
            }
        };
    }
    if (kind.preemptive()) {
        return [](const TaskSet& subset, int) {
            const auto order = dm_priority_order(subset);
            return rta_fp_preemptive(subset, order).schedulable;
        };
    }
    return [](const TaskSet& subset, int) {
        const auto order = dm_priority_order(subset);
        try {
            return rta_fp_nonpreemptive(subset, order).schedulable;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::BusyPeriodOverflow) return false;
            throw;
        }
    };
}

PartitionOutcome sp_u(const TaskSet& tasks, int processors, const SchedulerKind& kind) {
    SchedulerKind uni = kind;
    uni.scope = Scope::Uniprocessor;
    return run_ffdv(tasks, processors, uniprocessor_test(uni), uni, false);
}

PartitionOutcome sp_g(const TaskSet& tasks, int processors, const SchedulerKind& kind,
                      const GangTestHandle& gang_test) {
    SchedulerKind gang = kind;
    gang.scope = Scope::Gang;
    const auto exact = uniprocessor_test(gang);
    PartitionTest select = [exact, &gang_test](const TaskSet& subset, int volume) {
        if (pairwise_sequential(subset, volume)) return exact(subset, volume);
        const auto order = dm_priority_order(subset);
        return gang_test(subset, volume, order).schedulable;
    };
    return run_ffdv(tasks, processors, select, gang, true);
}

std::string to_string(Variant variant) {
    switch (variant) {
    case Variant::SpU: return "SP-U";
    case Variant::SpG: return "SP-G";
    case Variant::SpB: return "SP-B";
    }
    return "?";
}

void validate_config(const PartitionerConfig& config) {
    validate_scheduler_kind(config.scheduler);
    if (config.utilization_bound <= 0 || config.utilization_bound > 1)
        throw Error(ErrorCode::InvalidConfig, "utilization bound must lie in (0, 1]");
    if (config.variant == Variant::SpB &&
        !(config.scheduler.policy == Policy::Edf && config.scheduler.preemptive()))
        throw Error(ErrorCode::InvalidConfig, "SP-B is defined for preemptive EDF only");
}

PartitionerResult run_partitioner(const PartitionerConfig& config, const TaskSet& tasks,
                                  int processors, const GangTestRegistry& registry) {
    validate_config(config);
    PartitionerResult result;

    if (config.variant == Variant::SpB) {
        const auto report = sp_b(tasks, processors, config.utilization_bound);
        result.accepted = report.accepted;
        if (report.thm1.holds) result.detail = "thm1";
        else if (report.thm2.holds) result.detail = "thm2";
        else if (report.thm3.holds) result.detail = "thm3";
        else result.detail = "no bound holds";
        return result;
    }

    PartitionOutcome outcome;
    if (config.variant == Variant::SpU) {
        outcome = sp_u(tasks, processors, config.scheduler);
    } else {
        SchedulerKind gang = config.scheduler;
        gang.scope = Scope::Gang;
        GangTestHandle handle;
        if (config.gang_test.empty()) {
            handle = resolve_gang_test(gang, registry);
        } else if (const auto* found = registry.find(config.gang_test)) {
            handle = *found;
        } else if (config.gang_test == kBaselineGangTest) {
            handle = baseline_gang_handle();
        } else if (config.gang_test == kRejectGangTest) {
            handle = reject_gang_handle();
        } else {
            throw Error(ErrorCode::InvalidConfig, "unknown gang test '" + config.gang_test + "'");
        }
        outcome = sp_g(tasks, processors, gang, handle);
        result.detail = handle.name;
    }
    result.accepted = outcome.ok();
    result.plan = std::move(outcome.plan);
    result.failed_task = outcome.failed_task;
    return result;
}

}  // namespace gangsched

#include <gangsched/task.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace gangsched {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NonPositiveField: return "NonPositiveField";
    case ErrorCode::DeadlineExceedsPeriod: return "DeadlineExceedsPeriod";
    case ErrorCode::WcetExceedsDeadline: return "WcetExceedsDeadline";
    case ErrorCode::DuplicateTaskId: return "DuplicateTaskId";
    case ErrorCode::EmptyTaskSet: return "EmptyTaskSet";
    case ErrorCode::BusyPeriodOverflow: return "BusyPeriodOverflow";
    case ErrorCode::ConstrainedDeadlinePresent: return "ConstrainedDeadlinePresent";
    case ErrorCode::HorizonOverflow: return "HorizonOverflow";
    case ErrorCode::NonPreemptiveUnsupported: return "NonPreemptiveUnsupported";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::VolumeExceedsPartition: return "VolumeExceedsPartition";
    case ErrorCode::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorCode::GenerationExhausted: return "GenerationExhausted";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

GangTask::GangTask(TaskId id, Time wcet, Time period, Time deadline, int volume)
    : id_(id), wcet_(wcet), period_(period), deadline_(deadline), volume_(volume) {
    const std::string who = "task " + std::to_string(id);
    if (wcet < 1 || period < 1 || deadline < 1 || volume < 1)
        throw Error(ErrorCode::NonPositiveField, who + " has a field below 1");
    if (wcet > deadline)
        throw Error(ErrorCode::WcetExceedsDeadline, who + ": wcet " + std::to_string(wcet) +
                                                        " > deadline " + std::to_string(deadline));
    if (deadline > period)
        throw Error(ErrorCode::DeadlineExceedsPeriod, who + ": deadline " +
                                                          std::to_string(deadline) + " > period " +
                                                          std::to_string(period));
}

GangTask validate_task(TaskId id, Time wcet, Time period, Time deadline, int volume) {
    return GangTask(id, wcet, period, deadline, volume);
}

TaskSet::TaskSet(std::vector<GangTask> tasks) : tasks_(std::move(tasks)) {
    std::set<TaskId> seen;
    for (const auto& t : tasks_)
        if (!seen.insert(t.id()).second)
            throw Error(ErrorCode::DuplicateTaskId, "task id " + std::to_string(t.id()));
}

TaskSet::TaskSet(std::initializer_list<GangTask> tasks)
    : TaskSet(std::vector<GangTask>(tasks)) {}

std::optional<std::size_t> TaskSet::index_of(TaskId id) const {
    for (std::size_t i = 0; i < tasks_.size(); ++i)
        if (tasks_[i].id() == id) return i;
    return std::nullopt;
}

const GangTask& TaskSet::by_id(TaskId id) const {
    auto i = index_of(id);
    if (!i) throw Error(ErrorCode::InvalidConfig, "unknown task id " + std::to_string(id));
    return tasks_[*i];
}

Rational TaskSet::total_utilization() const {
    Rational sum = 0;
    for (const auto& t : tasks_) sum += t.utilization();
    return sum;
}

Rational TaskSet::total_seq_utilization() const {
    Rational sum = 0;
    for (const auto& t : tasks_) sum += t.seq_utilization();
    return sum;
}

int TaskSet::max_volume() const noexcept {
    int m = 0;
    for (const auto& t : tasks_) m = std::max(m, t.volume());
    return m;
}

int TaskSet::min_volume() const noexcept {
    if (tasks_.empty()) return 0;
    int m = tasks_.front().volume();
    for (const auto& t : tasks_) m = std::min(m, t.volume());
    return m;
}

Time TaskSet::max_period() const noexcept {
    Time p = 0;
    for (const auto& t : tasks_) p = std::max(p, t.period());
    return p;
}

TaskSet TaskSet::subset(std::span<const std::size_t> indices) const {
    std::vector<GangTask> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(tasks_.at(i));
    return TaskSet(std::move(out));
}

TaskSet TaskSet::with(const GangTask& extra) const {
    auto copy = tasks_;
    copy.push_back(extra);
    return TaskSet(std::move(copy));
}

std::vector<std::size_t> dm_priority_order(const TaskSet& tasks) {
    std::vector<std::size_t> order(tasks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = tasks[a];
        const auto& y = tasks[b];
        if (x.deadline() != y.deadline()) return x.deadline() < y.deadline();
        return x.id() < y.id();
    });
    return order;
}

std::optional<Time> hyperperiod(const TaskSet& tasks, Time cap) {
    Time h = 1;
    for (const auto& t : tasks) {
        // lcm(h, T) = h / gcd * T; check against cap before multiplying.
        const Time step = t.period() / std::gcd(h, t.period());
        if (h > cap / step) return std::nullopt;
        h *= step;
    }
    if (h > cap) return std::nullopt;
    return h;
}

}  // namespace gangsched

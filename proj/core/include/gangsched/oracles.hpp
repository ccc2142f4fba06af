#pragma once

#include <gangsched/simulator.hpp>
#include <gangsched/task.hpp>

#include <optional>
#include <span>

namespace gangsched {

// Simulation-based reference values used to cross-check the analytical
// response-time tests. Both run the uniprocessor (serialized) schedulers.

/// Response of the first job of tasks[task_index] under synchronous release
/// with preemptive FP, or std::nullopt when it has not finished within
/// `limit` ticks (default: its relative deadline).
std::optional<Time> critical_instant_response(const TaskSet& tasks,
                                              std::span<const std::size_t> order,
                                              std::size_t task_index,
                                              std::optional<Time> limit = std::nullopt);

/// Largest response of tasks[task_index] under non-preemptive FP over the
/// release patterns "blocker b released at tick 0, every task of equal or
/// higher priority at tick 1", for every lower-priority b and for no blocker.
/// Responses are taken over all of the task's jobs in the level-i busy
/// period. Throws HorizonOverflow when that busy period exceeds `cap`.
Time np_worst_response_oracle(const TaskSet& tasks, std::span<const std::size_t> order,
                              std::size_t task_index, Time cap = 1'000'000);

}  // namespace gangsched

#pragma once

#include <gangsched/partition.hpp>
#include <gangsched/task.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace gangsched {

/// Contents of a task-set file: `platform.processors` plus a `tasks` array of
/// {id, wcet, period, deadline, volume} objects (JSON).
struct TaskSetFile {
    Platform platform;
    TaskSet tasks;
};

/// Throws Error(ParseError) on malformed documents and the validate_task
/// codes on invalid tasks.
TaskSetFile parse_taskset(std::string_view text);
TaskSetFile read_taskset(const std::filesystem::path& path);

std::string format_taskset(const TaskSetFile& file);
void write_taskset(const std::filesystem::path& path, const TaskSetFile& file);

/// `{"partitions": [{"volume", "members"}...], "unassigned": M'}`.
std::string format_plan(const PartitionPlan& plan);

}  // namespace gangsched

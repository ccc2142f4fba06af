#pragma once

#include <gangsched/gang.hpp>
#include <gangsched/generator.hpp>
#include <gangsched/partitioning.hpp>
#include <gangsched/uniproc.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gangsched {

/// CSV header shared by grid and case-study output.
inline constexpr const char* kCsvHeader =
    "scenario,M,n,volume_level,norm_util,test,schedulable,total,ratio";

struct NamedTest {
    std::string name;
    /// Scenario family the test belongs to ("preemptive", "nonpreemptive").
    std::string scenario;
    PartitionerConfig config;
};

/// SP-U/SP-G/SP-B over preemptive FP and EDF, and SP-U/SP-G over
/// non-preemptive FP.
std::vector<NamedTest> default_grid_tests();
std::vector<NamedTest> default_case_study_tests();
/// Keeps the tests whose names appear in the comma-separated list; an empty
/// list keeps everything. Throws InvalidConfig on unknown names.
std::vector<NamedTest> select_tests(std::vector<NamedTest> tests, const std::string& names);

struct ExperimentGrid {
    std::vector<int> processors{8, 16};
    /// n = factor * M.
    std::vector<int> task_factors{1, 2};
    std::vector<VolumeLevel> levels{VolumeLevel::Low, VolumeLevel::Medium, VolumeLevel::High};
    std::vector<double> utilizations{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    int sets_per_cell = 100;
    std::uint64_t seed = 2024;
    std::vector<NamedTest> tests = default_grid_tests();
    /// Worker threads; 0 picks hardware concurrency.
    unsigned threads = 0;
};

/// Throws InvalidConfig when sets_per_cell < 1 or a utilization lies
/// outside (0, 1].
void validate_grid(const ExperimentGrid& grid);

struct RatioRow {
    std::string scenario;
    /// Processor count, or "avg" in the averaged view.
    std::string processors;
    std::string tasks;
    std::string volume_level;
    double norm_util = 0.0;
    std::string test;
    long schedulable = 0;
    long total = 0;

    double ratio() const noexcept { return total == 0 ? 0.0 : double(schedulable) / double(total); }
};

struct ExperimentResult {
    std::vector<RatioRow> rows;
    /// Rows pooled over M and n per (scenario, level, utilization, test).
    std::vector<RatioRow> averaged;
    /// Accepted plans re-simulated under synchronous release, and how many of
    /// those showed a deadline miss (expected to stay zero).
    long spot_checks = 0;
    long spot_check_misses = 0;
};

void write_rows(std::ostream& out, const std::vector<RatioRow>& rows);

/// `<stem>.avg.csv` next to `path`.
std::filesystem::path averaged_path(const std::filesystem::path& path);

/// Runs every cell of the grid and, when `out_path` is non-empty, writes the
/// per-cell CSV there and the averaged view to averaged_path(out_path).
ExperimentResult run_grid(const ExperimentGrid& grid, const std::filesystem::path& out_path,
                          const GangTestRegistry& registry = {});

struct CaseStudyConfig {
    EdgeTpuCard card = EdgeTpuCard::Tpu8;
    std::vector<double> utilizations{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    int sets_per_cell = 100;
    std::uint64_t seed = 2024;
    std::vector<NamedTest> tests = default_case_study_tests();
    unsigned threads = 0;
};

ExperimentResult run_case_study(const CaseStudyConfig& config,
                                const std::filesystem::path& out_path,
                                const GangTestRegistry& registry = {});

/// Partitions the set in `taskset_path` with `config`, prints the plan (or
/// the failure) and per-task responses to `out`, diagnostics to `err`.
/// Returns 0 when schedulable, 1 when not, 2 on unreadable or invalid input.
int analyze_file(const std::filesystem::path& taskset_path, const PartitionerConfig& config,
                 const GangTestRegistry& registry, std::ostream& out, std::ostream& err);

}  // namespace gangsched

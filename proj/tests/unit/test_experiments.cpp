#include <gangsched/experiments.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gangsched;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "gangsched_test_experiments";
    fs::create_directories(dir);
    return dir / name;
}

ExperimentGrid tiny_grid() {
    ExperimentGrid grid;
    grid.processors = {8};
    grid.task_factors = {1};
    grid.levels = {VolumeLevel::Low, VolumeLevel::High};
    grid.utilizations = {0.2, 1.0};
    grid.sets_per_cell = 10;
    grid.seed = 99;
    return grid;
}

PartitionerConfig fp_p_spu() {
    PartitionerConfig config;
    config.variant = Variant::SpU;
    config.scheduler = {Policy::FixedPriority, Preemption::Preemptive, Scope::Uniprocessor};
    return config;
}

}  // namespace

TEST(Grid, Validation) {
    auto grid = tiny_grid();
    grid.sets_per_cell = 0;
    EXPECT_THROW(validate_grid(grid), Error);
    grid = tiny_grid();
    grid.utilizations = {0.0};
    EXPECT_THROW(validate_grid(grid), Error);
    grid = tiny_grid();
    grid.utilizations = {1.5};
    EXPECT_THROW(validate_grid(grid), Error);
    EXPECT_NO_THROW(validate_grid(tiny_grid()));
}

TEST(Grid, SelectTests) {
    const auto picked = select_tests(default_grid_tests(), "SP-U-FP,SP-B-EDF");
    ASSERT_EQ(picked.size(), 2u);
    EXPECT_EQ(picked[0].name, "SP-U-FP");
    EXPECT_EQ(picked[1].name, "SP-B-EDF");
    EXPECT_EQ(select_tests(default_grid_tests(), "").size(), default_grid_tests().size());
    EXPECT_THROW(select_tests(default_grid_tests(), "SP-X"), Error);
}

TEST(Grid, DeterministicCsv) {
    const auto a = scratch("grid_a.csv");
    const auto b = scratch("grid_b.csv");
    auto grid = tiny_grid();
    grid.threads = 1;
    const auto result = run_grid(grid, a);
    grid.threads = 3;
    run_grid(grid, b);
    const auto text = slurp(a);
    EXPECT_EQ(text, slurp(b));
    EXPECT_EQ(slurp(averaged_path(a)), slurp(averaged_path(b)));
    EXPECT_EQ(text.substr(0, text.find('\n')), kCsvHeader);
    EXPECT_EQ(result.rows.size(), 2u * 2u * default_grid_tests().size());
    EXPECT_EQ(result.spot_check_misses, 0);
    for (const auto& row : result.rows) {
        EXPECT_EQ(row.total, 10);
        EXPECT_LE(row.schedulable, row.total);
    }
}

TEST(Grid, FullLoadHighVolumeIsHard) {
    auto grid = tiny_grid();
    grid.levels = {VolumeLevel::High};
    grid.utilizations = {1.0};
    grid.tests = select_tests(default_grid_tests(), "SP-U-FP");
    const auto result = run_grid(grid, scratch("grid_full.csv"));
    ASSERT_EQ(result.rows.size(), 1u);
    EXPECT_LE(result.rows[0].ratio(), 0.1);
}

TEST(CaseStudy, DeterministicAndSized) {
    CaseStudyConfig config;
    config.card = EdgeTpuCard::Tpu16;
    config.utilizations = {0.1, 0.5};
    config.sets_per_cell = 10;
    const auto a = scratch("case_a.csv");
    const auto b = scratch("case_b.csv");
    const auto result = run_case_study(config, a);
    run_case_study(config, b);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(result.rows.size(), 2u * default_case_study_tests().size());
    for (const auto& row : result.rows) {
        EXPECT_EQ(row.scenario, "casestudy");
        EXPECT_EQ(row.processors, "16");
    }
}

TEST(AnalyzeFile, ExitCodes) {
    std::ostringstream out, err;
    EXPECT_EQ(analyze_file(GANGSCHED_FIXTURES "/fig3.json", fp_p_spu(), {}, out, err), 0);
    EXPECT_NE(out.str().find("\"volume\": 2"), std::string::npos) << out.str();
    EXPECT_EQ(analyze_file(GANGSCHED_FIXTURES "/fig4.json", fp_p_spu(), {}, out, err), 1);
    EXPECT_EQ(analyze_file(GANGSCHED_FIXTURES "/garbage.json", fp_p_spu(), {}, out, err), 2);
    EXPECT_EQ(analyze_file(GANGSCHED_FIXTURES "/missing.json", fp_p_spu(), {}, out, err), 2);

    auto spg = fp_p_spu();
    spg.variant = Variant::SpG;
    EXPECT_EQ(analyze_file(GANGSCHED_FIXTURES "/spg_worked.json", spg, {}, out, err), 0);
    EXPECT_EQ(analyze_file(GANGSCHED_FIXTURES "/spg_worked.json", fp_p_spu(), {}, out, err), 1);
}

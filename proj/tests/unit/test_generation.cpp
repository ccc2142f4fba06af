#include <gangsched/generator.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace gangsched;

TEST(GenUtilizations, RespectsCapsAndSum) {
    const std::vector<double> caps{1, 2, 2};
    const auto u = gen_utilizations(3, 1.5, caps, 7);
    ASSERT_EQ(u.size(), 3u);
    for (std::size_t i = 0; i < u.size(); ++i) {
        EXPECT_GT(u[i], 0.0);
        EXPECT_LE(u[i], caps[i]);
    }
    EXPECT_NEAR(std::accumulate(u.begin(), u.end(), 0.0), 1.5, 1.5e-9);
    EXPECT_EQ(u, gen_utilizations(3, 1.5, caps, 7));
    EXPECT_NE(u, gen_utilizations(3, 1.5, caps, 8));
}

TEST(GenUtilizations, InfeasibleTarget) {
    const std::vector<double> caps{1, 1};
    try {
        gen_utilizations(2, 3.0, caps, 1);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InfeasibleTarget);
    }
}

TEST(GenUtilizations, TightCapsOverManySeeds) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int n = 2 + int(seed % 10);
        std::vector<double> caps(n);
        for (int i = 0; i < n; ++i) caps[i] = 0.5 + 0.25 * (i % 4);
        const double cap_sum = std::accumulate(caps.begin(), caps.end(), 0.0);
        const double total = cap_sum * (0.05 + 0.9 * double(seed % 19) / 18.0);
        const auto u = gen_utilizations(n, total, caps, seed);
        for (int i = 0; i < n; ++i) ASSERT_LE(u[i], caps[i] * (1 + 1e-12));
        ASSERT_NEAR(std::accumulate(u.begin(), u.end(), 0.0), total, total * 1e-9);
    }
}

TEST(GenTaskset, Formulas) {
    EXPECT_EQ(wcet_for(0.37, 100, 2), 18);
    EXPECT_EQ(minimum_volume(2.4), 3);
    EXPECT_EQ(minimum_volume(1.0), 1);
    EXPECT_EQ(minimum_volume(0.1), 1);
    EXPECT_EQ(volume_range(VolumeLevel::High, 8), std::make_pair(1, 7));
    EXPECT_EQ(volume_range(VolumeLevel::Low, 8), std::make_pair(1, 3));
    EXPECT_EQ(volume_range(VolumeLevel::Medium, 8), std::make_pair(1, 5));
    EXPECT_EQ(volume_range(VolumeLevel::Medium, 16), std::make_pair(1, 10));
    EXPECT_EQ(parse_volume_level("medium"), VolumeLevel::Medium);
    EXPECT_THROW(parse_volume_level("huge"), Error);
}

TEST(GenTaskset, PropertiesAcrossGrid) {
    for (int processors : {8, 16}) {
        for (auto level : {VolumeLevel::Low, VolumeLevel::Medium, VolumeLevel::High}) {
            for (double norm : {0.1, 0.5, 1.0}) {
                for (std::uint64_t seed = 0; seed < 10; ++seed) {
                    GenSpec spec;
                    spec.processors = processors;
                    spec.tasks = processors * (1 + int(seed % 2));
                    spec.level = level;
                    spec.normalized_utilization = norm;
                    spec.seed = seed;
                    const auto set = gen_taskset(spec);
                    ASSERT_EQ(set.tasks.size(), std::size_t(spec.tasks));
                    const auto [lo, hi] = volume_range(level, processors);
                    for (const auto& t : set.tasks) {
                        ASSERT_GE(t.volume(), lo);
                        ASSERT_LE(t.volume(), hi);
                        ASSERT_TRUE(t.implicit_deadline());
                        ASSERT_GE(t.period(), spec.period_min);
                        ASSERT_LE(t.period(), spec.period_max);
                        ASSERT_LE(t.seq_utilization(), 1);
                    }
                    ASSERT_EQ(set.actual_utilization, set.tasks.total_utilization());
                    ASSERT_LE(set.actual_utilization.get_d(), norm * processors + 1e-9);
                    ASSERT_EQ(gen_taskset(spec).tasks, set.tasks);
                }
            }
        }
    }
}

TEST(DeriveSeed, SensitiveToEveryCoordinate) {
    EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
    EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
    EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(2, {2, 3}));
    EXPECT_NE(derive_seed(1, {2}), derive_seed(1, {2, 0}));
}

TEST(EdgeTpu, ModelTable) {
    const auto models = edge_tpu_models();
    ASSERT_EQ(models.size(), 7u);
    const std::vector<int> volumes{1, 2, 4, 6, 4, 7, 9};
    const std::vector<Time> woet{6, 10, 15, 31, 24, 44, 55};
    for (std::size_t i = 0; i < models.size(); ++i) {
        EXPECT_EQ(models[i].volume, volumes[i]);
        EXPECT_EQ(models[i].woet_ms, woet[i]);
    }
    EXPECT_EQ(edge_tpu_period(55, 9, 0.9), 550);
    EXPECT_EQ(card_processors(EdgeTpuCard::Tpu8), 8);
    EXPECT_EQ(card_processors(EdgeTpuCard::Tpu16), 16);
    EXPECT_EQ(parse_card("16"), EdgeTpuCard::Tpu16);
    EXPECT_EQ(parse_card("8tpu"), EdgeTpuCard::Tpu8);
    EXPECT_THROW(parse_card("4"), Error);
}

TEST(EdgeTpu, Suites) {
    const auto small = edge_tpu_suite(EdgeTpuCard::Tpu8, 0.5, 3);
    ASSERT_EQ(small.tasks.size(), 6u);
    std::vector<int> volumes;
    for (const auto& t : small.tasks) volumes.push_back(t.volume());
    EXPECT_EQ(volumes, (std::vector<int>{1, 2, 4, 6, 4, 7}));
    EXPECT_EQ(small.processors, 8);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (double norm : {0.1, 0.5, 1.0}) {
            const auto big = edge_tpu_suite(EdgeTpuCard::Tpu16, norm, seed);
            ASSERT_EQ(big.tasks.size(), 7u);
            ASSERT_EQ(big.tasks[6].volume(), 9);
            ASSERT_EQ(big.tasks[6].wcet(), 55);
            ASSERT_LE(big.actual_utilization.get_d(), norm * 16 + 1e-9);
            ASSERT_EQ(edge_tpu_suite(EdgeTpuCard::Tpu16, norm, seed).tasks, big.tasks);
        }
    }
}

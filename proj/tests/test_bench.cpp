#include "helpers.hpp"

#include <sstream>

using namespace nse;
using namespace nse::bench;

TEST(Stats, MeanStderr) {
    const MeanStderr m = mean_stderr({1, 2, 3, 4});
    EXPECT_DOUBLE_EQ(m.mean, 2.5);
    EXPECT_NEAR(m.stderr_, std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
    EXPECT_EQ(mean_stderr({}).count, 0u);
    EXPECT_EQ(mean_stderr({7}).stderr_, 0.0);
}

TEST(Stats, LinearFit) {
    const LinearFit f = linear_fit({1, 2, 3}, {3, 5, 7});
    EXPECT_NEAR(f.slope, 2, 1e-12);
    EXPECT_NEAR(f.intercept, 1, 1e-12);
    EXPECT_NEAR(f.r_squared, 1, 1e-12);
}

TEST(RunIndexed, ParallelMatchesSerial) {
    const std::function<int(std::size_t)> sq = [](std::size_t i) { return int(i * i); };
    EXPECT_EQ(run_indexed<int>(50, 1, sq), run_indexed<int>(50, 8, sq));
}

TEST(Bench, OneRecordPerTrial) {
    const std::vector<GeneratorConfig> configs{nse::testing::rgs(5, 3, 10), nse::testing::rgs(6, 3, 20)};
    const auto records = run_bench(configs, 4, SolverKind::Two, 3);
    ASSERT_EQ(records.size(), 8u);
    for (std::size_t k = 0; k < records.size(); ++k) {
        EXPECT_TRUE(records[k].ok);
        EXPECT_GE(records[k].seconds, 0.0);
        EXPECT_EQ(records[k].config_index, k / 4);
        EXPECT_EQ(records[k].trial, k % 4);
        EXPECT_EQ(records[k].config.seed, configs[k / 4].seed + k % 4);
    }
    const auto summary = summarize(configs, records);
    ASSERT_EQ(summary.size(), 2u);
    EXPECT_EQ(summary[0].seconds.count, 4u);
}

TEST(Bench, FailuresAreRecorded) {
    const auto records = run_bench({nse::testing::rgs(5, 3, 1)}, 2, SolverKind::MultiMs);
    ASSERT_EQ(records.size(), 2u);
    for (const auto& r : records) {
        EXPECT_FALSE(r.ok);
        EXPECT_FALSE(r.error.empty());
    }
    std::ostringstream os;
    write_bench_csv(os, records);
    EXPECT_NE(os.str().find("failed: "), std::string::npos);
}

TEST(RankStats, IdentityGame) {
    const RankStats s = rank_stats(identity3());
    EXPECT_EQ(s.efficient_targets, 1u);
    EXPECT_EQ(s.optimistic, 1u);
    EXPECT_EQ(s.average, 1.0);
    EXPECT_EQ(s.pessimistic, 1u);
    EXPECT_NEAR(s.efficient_ratio, 1.0 / 3, 1e-12);
}

TEST(RankStats, OppositePreferences) {
    const RankStats s = rank_stats(nse::testing::opposite_game({1, 1}, {1, 1}));
    EXPECT_EQ(s.efficient_targets, 2u);
    EXPECT_EQ(s.optimistic, 1u);
    EXPECT_EQ(s.average, 1.5);
    EXPECT_EQ(s.pessimistic, 2u);
    EXPECT_EQ(s.efficient_ratio, 1.0);
}

TEST(RankStats, OrderedOnRandomGames) {
    const auto rows = run_stats({nse::testing::rgs(8, 4, 0)}, 20, 4);
    ASSERT_EQ(rows.size(), 20u);
    for (const auto& r : rows) {
        ASSERT_TRUE(r.ok) << r.error;
        EXPECT_LE(double(r.optimistic), r.average);
        EXPECT_LE(r.average, double(r.pessimistic));
        EXPECT_GE(r.optimistic, 1u);
        EXPECT_LE(r.pessimistic, 8u);
    }
    const RankFrequencies f = rank_frequencies(rows);
    std::size_t total = 0;
    for (const auto& [rank, count] : f.pessimistic) total += count;
    EXPECT_EQ(total, 20u);
}

TEST(Csv, HeadersAreStable) {
    std::ostringstream bench_os, stats_os, sum_os, freq_os;
    write_bench_csv(bench_os, {});
    write_stats_csv(stats_os, {});
    write_summary_csv(sum_os, {});
    write_frequency_csv(freq_os, {});
    const std::string config = "family,defenders,targets,schedules,support,monotone,grid,radius,layers,width,seed";
    EXPECT_EQ(bench_os.str(), config + ",solver,trial,seconds,status\n");
    EXPECT_EQ(sum_os.str(), config + ",trials,failures,mean_seconds,stderr_seconds\n");
    EXPECT_EQ(stats_os.str(), config +
                                  ",trial,equilibrium_targets,efficient_targets,efficient_ratio,rank_optimistic,"
                                  "rank_average,rank_pessimistic,status\n");
    EXPECT_EQ(freq_os.str(), "convention,rank,count\n");
    EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Csv, StatsDeterministic) {
    const std::vector<GeneratorConfig> configs{nse::testing::rgs(6, 3, 5)};
    std::ostringstream a, b;
    write_stats_csv(a, run_stats(configs, 5, 1));
    write_stats_csv(b, run_stats(configs, 5, 3));
    EXPECT_EQ(a.str(), b.str());
}

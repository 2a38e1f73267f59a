#include "helpers.hpp"

#include <algorithm>
#include <random>

using namespace nse;
using nse::testing::expect_vector_near;

TEST(TotalCoverage, SumsDefenders) {
    StrategyProfile p{{{0, 0.5, 0.5, 0}, {0, 0, 0, 1.0}}, 0};
    expect_vector_near(total_coverage(p), {0, 0.5, 0.5, 1.0});
}

TEST(TotalCoverage, ZeroAndThreeDefenders) {
    expect_vector_near(total_coverage(StrategyProfile{{{0, 0, 0}, {0, 0, 0}}, 0}), {0, 0, 0});
    expect_vector_near(total_coverage(StrategyProfile{{{1, 2}, {3, 4}, {0, 1}}, 0}), {4, 7});
}

TEST(TotalCoverage, DimensionMismatchThrows) {
    EXPECT_THROW(total_coverage(StrategyProfile{{{1, 2}, {3}}, 0}), ValidationError);
}

TEST(BestResponse, Examples) {
    const std::vector<double> a{0, 0.5, 0.5, 1.0}, b{1, 1, 1}, c{2, 3, 1};
    EXPECT_EQ(best_response_set(a, 1e-9), (std::vector<Target>{0}));
    EXPECT_EQ(best_response_set(b, 1e-9), (std::vector<Target>{0, 1, 2}));
    EXPECT_EQ(best_response_set(c, 1e-9), (std::vector<Target>{2}));
}

TEST(BestResponse, NonemptyContainsArgminAndGrowsWithTolerance) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> val(0, 4);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> v(1 + trial % 7);
        for (double& x : v) x = val(rng) * 0.25;
        const double lo = (trial % 5) * 0.1, hi = lo + 0.2;
        const auto small = best_response_set(v, lo), large = best_response_set(v, hi);
        ASSERT_FALSE(small.empty());
        const double mn = *std::min_element(v.begin(), v.end());
        for (Target t = 0; t < v.size(); ++t)
            if (v[t] == mn) {
                EXPECT_TRUE(contains(small, t));
            }
        for (Target t : small) EXPECT_TRUE(contains(large, t));
    }
}

TEST(PreferenceOrder, RejectsNonPermutations) {
    EXPECT_THROW(PreferenceOrder({0, 0, 1}), ValidationError);
    EXPECT_THROW(PreferenceOrder({0, 3, 1}), ValidationError);
}

TEST(PreferenceOrder, AboveExamples) {
    const PreferenceOrder id = PreferenceOrder::identity(3);
    EXPECT_TRUE(id.above(0).empty());
    EXPECT_EQ(id.above(2), (std::vector<Target>{0, 1}));
    // 22 > 11 > 12 > 21 with targets 11, 12, 21, 22 at indices 0..3.
    const PreferenceOrder d1({3, 0, 1, 2});
    EXPECT_EQ(d1.above(0), (std::vector<Target>{3}));
    EXPECT_EQ(d1.rank(3), 1u);
    EXPECT_EQ(d1.rank(2), 4u);
}

TEST(PreferenceOrder, PartitionAndStrictTotalOrder) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t T = 1 + trial % 9;
        Rng r(trial);
        const PreferenceOrder p(r.permutation(T));
        for (Target t = 0; t < T; ++t) {
            std::vector<Target> all = p.above(t);
            all.push_back(t);
            const auto below = p.below(t);
            all.insert(all.end(), below.begin(), below.end());
            std::sort(all.begin(), all.end());
            ASSERT_EQ(all.size(), T);
            for (Target k = 0; k < T; ++k) EXPECT_EQ(all[k], k);
            EXPECT_EQ(p.above_eq(t).size(), p.above(t).size() + 1);
            EXPECT_EQ(p.below_eq(t).size(), p.below(t).size() + 1);
            for (Target k = 0; k < T; ++k) {
                const int relations = int(p.prefers(t, k)) + int(p.prefers(k, t)) + int(t == k);
                EXPECT_EQ(relations, 1);
            }
        }
    }
}

TEST(Waic, TieBrokenAgainstDefender) {
    Game g = identity3();
    StrategyProfile p{{{0, 0, 0}, {0, 0, 0}}, 2};
    // Target 3 is defender 1's least preferred member of the tie.
    EXPECT_TRUE(is_waic(g, p, 0));
    g.defenders[0].preference = PreferenceOrder({2, 1, 0});
    // Now target 3 is its favourite, so the attacker would not pick it.
    EXPECT_FALSE(is_waic(g, p, 0));
}

TEST(Waic, UniqueMinimum) {
    const Game g = identity3();
    const StrategyProfile p{{{2, 3, 1}, {0, 0, 0}}, 2};
    EXPECT_TRUE(is_waic(g, p, 0));
    EXPECT_TRUE(is_waic(g, p, 1));
}

TEST(Waic, ImpliesBestResponse) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> val(0, 2);
    const Game g = identity3();
    for (int trial = 0; trial < 300; ++trial) {
        StrategyProfile p{{CoverageVector(3), CoverageVector(3)}, Target(trial % 3)};
        for (auto& v : p.coverages)
            for (double& x : v) x = val(rng);
        for (std::size_t i = 0; i < 2; ++i)
            if (is_waic(g, p, i)) {
                const auto total = total_coverage(p);
                EXPECT_TRUE(contains(best_response_set(total), p.target));
            }
    }
}

TEST(ValidateGame, RejectsMalformedGames) {
    Game g = identity3();
    g.defenders[1].coverage_set = ExplicitSchedules{{{1, 0}}, ScheduleMode::Ssas, 2};
    EXPECT_THROW(validate_game(g), ValidationError);
    Game neg = identity3();
    std::get<ExplicitSchedules>(neg.defenders[0].coverage_set).schedules[0][0] = -1;
    EXPECT_THROW(validate_game(neg), ValidationError);
    Game empty;
    EXPECT_THROW(validate_game(empty), ValidationError);
}

TEST(ValidateProfile, RejectsBadShapes) {
    const Game g = identity3();
    EXPECT_THROW(validate_profile(g, StrategyProfile{{{0, 0, 0}}, 0}), ValidationError);
    EXPECT_THROW(validate_profile(g, StrategyProfile{{{0, 0, 0}, {0, 0, 0}}, 3}), ValidationError);
    EXPECT_THROW(validate_profile(g, StrategyProfile{{{0, -1, 0}, {0, 0, 0}}, 0}), ValidationError);
}

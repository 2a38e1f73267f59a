#include "helpers.hpp"

#include <algorithm>

using namespace nse;
using nse::testing::expect_vector_near;

namespace {

Game single_schedule_game() { return nse::testing::opposite_game({0, 1}, {1, 0}); }

Game make_monotone_rgs(std::size_t n, std::size_t T, std::uint64_t seed) {
    GeneratorConfig c = nse::testing::rgs(T, 4, seed, n);
    c.monotone = true;
    return generate(c);
}

} // namespace

TEST(CheckMonotone, Examples) {
    EXPECT_TRUE(check_monotone(nse::testing::opposite_game({0, 1}, {1, 0})).monotone);
    Game g = nse::testing::two_defender_game({PreferenceOrder::identity(3)}, {{{1, 0, 0}}});
    const MonotoneCheck bad = check_monotone(g);
    ASSERT_FALSE(bad.monotone);
    EXPECT_EQ(bad.violation->defender, 0u);
    EXPECT_EQ(bad.violation->schedule, 0u);
    EXPECT_EQ(bad.violation->preferred, 0u);
    EXPECT_EQ(bad.violation->other, 1u);
    Game zero = nse::testing::two_defender_game({PreferenceOrder::identity(3)}, {{{0, 0, 0}}});
    EXPECT_TRUE(check_monotone(zero).monotone);
}

TEST(BuildMatrix, Examples) {
    const MaximinMatrix m = build_matrix(single_schedule_game());
    EXPECT_NEAR(m.entries[0][0], 0, 1e-9);
    EXPECT_NEAR(m.entries[0][1], 1, 1e-9);
    EXPECT_NEAR(m.entries[1][0], 0, 1e-9);
    EXPECT_NEAR(m.entries[1][1], 1, 1e-9);
    EXPECT_NEAR(m.f_values[0], 1, 1e-9);
    EXPECT_NEAR(m.f_values[1], 1, 1e-9);

    const MaximinMatrix id = build_matrix(identity3());
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(id.entries[i][0], 1.0 / 3, 1e-9);
        EXPECT_NEAR(id.entries[i][1], 0.5, 1e-9);
        EXPECT_NEAR(id.entries[i][2], 1.0, 1e-9);
    }

    Game solo = nse::testing::two_defender_game({PreferenceOrder::identity(1)}, {{{0.7}}});
    const MaximinMatrix one = build_matrix(solo);
    EXPECT_NEAR(one.entries[0][0], 0.7, 1e-9);
}

TEST(SelectKstar, Examples) {
    EXPECT_EQ(select_kstar(build_matrix(single_schedule_game())), 0u);
    MaximinMatrix distinct;
    distinct.f_values = {0.5, 0.7, 0.6};
    distinct.entries = {{0.5, 0.6, 0.7}};
    distinct.prefs = {PreferenceOrder::identity(3)};
    EXPECT_EQ(select_kstar(distinct), 0u);
    Game solo = nse::testing::two_defender_game({PreferenceOrder::identity(1)}, {{{1}}});
    EXPECT_EQ(select_kstar(build_matrix(solo)), 0u);
}

TEST(SelectKstar, TieBrokenTowardsUndominatedTarget) {
    // Both F values tie at 1; defender 1 alone attains the row value at
    // the second target and prefers it, so the second target dominates.
    MaximinMatrix m;
    m.prefs = {PreferenceOrder({1, 0}), PreferenceOrder({1, 0})};
    m.entries = {{1, 1}, {0, 1}};
    m.f_values = {1, 1};
    EXPECT_EQ(select_kstar(m), 1u);
}

TEST(SolveMulti, TwoTargetExample) {
    const Game g = single_schedule_game();
    const StrategyProfile p = solve_multi_ms(g);
    EXPECT_EQ(p.target, 0u);
    expect_vector_near(p.coverages[0], {0, 1});
    expect_vector_near(p.coverages[1], {0, 0});
    EXPECT_TRUE(verify_nse(g, p).is_nse());
}

TEST(SolveMulti, SharedFavouriteIsAttacked) {
    const Game g = nse::testing::two_defender_game({PreferenceOrder::identity(3), PreferenceOrder::identity(3)},
                                                   {{{0, 1, 2}}, {{0, 1, 2}}});
    const StrategyProfile p = solve_multi_ms(g);
    EXPECT_EQ(p.target, 0u);
    EXPECT_NEAR(total_coverage(p)[0], 0.0, 1e-12);
    EXPECT_TRUE(verify_nse(g, p).is_nse());
}

TEST(SolveMulti, SingleDefender) {
    Game g = nse::testing::two_defender_game({PreferenceOrder({2, 0, 1})}, {{{1, 1, 0}}});
    const StrategyProfile p = solve_multi_ms(g);
    EXPECT_EQ(p.target, 2u);
    expect_vector_near(p.coverages[0], {0, 0, 0});
    EXPECT_TRUE(verify_nse(g, p).is_nse());
}

TEST(SolveMulti, RefusesWithoutMonotoneSchedules) {
    EXPECT_THROW(solve_multi_ms(identity3()), PreconditionError);
    EXPECT_THROW(solve_multi_ms(example1(0, 1, ScheduleMode::Clearance)), PreconditionError);
}

class RandomMonotone : public ::testing::TestWithParam<int> {};

TEST_P(RandomMonotone, ConstructionHolds) {
    const int seed = GetParam();
    const std::size_t n = 2 + seed % 4, T = 3 + seed % 6;
    const Game g = make_monotone_rgs(n, T, 500 + seed);
    ASSERT_TRUE(check_monotone(g).monotone);

    const MaximinMatrix m = build_matrix(g);
    for (const auto& row : m.entries)
        for (std::size_t p = 1; p < row.size(); ++p) EXPECT_GE(row[p], row[p - 1] - 1e-9);

    const StrategyProfile p = solve_multi_ms(g);
    const Target k = select_kstar(m);
    EXPECT_EQ(p.target, k);
    const double fmin = *std::min_element(m.f_values.begin(), m.f_values.end());
    EXPECT_NEAR(m.f_values[k], fmin, 1e-7);
    const CoverageVector total = total_coverage(p);
    for (Target t = 0; t < T; ++t) EXPECT_NEAR(total[t], t == k ? 0.0 : m.f_values[k], 1e-9);
    for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(membership(g.coverage_set(i), p.coverages[i]));
    EXPECT_TRUE(verify_nse(g, p).is_nse());
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomMonotone, ::testing::Range(0, 40));

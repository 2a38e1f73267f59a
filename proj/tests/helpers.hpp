#pragma once

#include "nse/nse.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace nse::testing {

inline Game one_target_game() {
    Game g;
    g.num_targets = 1;
    ExplicitSchedules s{{{1.0}}, ScheduleMode::Ssas, 1};
    g.defenders.push_back({PreferenceOrder::identity(1), s});
    g.defenders.push_back({PreferenceOrder::identity(1), s});
    return g;
}

// Prefs 1>2 and 2>1 (one-based); each defender owns a single schedule.
inline Game opposite_game(const CoverageVector& s1, const CoverageVector& s2) {
    Game g;
    g.num_targets = 2;
    g.defenders.push_back({PreferenceOrder({0, 1}), ExplicitSchedules{{s1}, ScheduleMode::Ssas, 2}});
    g.defenders.push_back({PreferenceOrder({1, 0}), ExplicitSchedules{{s2}, ScheduleMode::Ssas, 2}});
    return g;
}

inline Game two_defender_game(std::vector<PreferenceOrder> prefs, std::vector<std::vector<CoverageVector>> schedules,
                              ScheduleMode mode = ScheduleMode::Ssas) {
    Game g;
    g.num_targets = prefs.front().size();
    for (std::size_t i = 0; i < prefs.size(); ++i)
        g.defenders.push_back({prefs[i], ExplicitSchedules{schedules[i], mode, g.num_targets}});
    return g;
}

inline GeneratorConfig rgs(std::size_t targets, std::size_t schedules, std::uint64_t seed, std::size_t defenders = 2) {
    GeneratorConfig c;
    c.family = Family::Rgs;
    c.targets = targets;
    c.schedules = schedules;
    c.support = targets;
    c.defenders = defenders;
    c.seed = seed;
    return c;
}

inline std::vector<Target> random_subset(std::mt19937_64& rng, std::size_t T) {
    std::vector<Target> out;
    for (Target t = 0; t < T; ++t)
        if (rng() % 2) out.push_back(t);
    return out;
}

inline void expect_vector_near(const CoverageVector& got, const CoverageVector& want, double tol = 1e-7) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], tol) << "entry " << k;
}

} // namespace nse::testing

#pragma once

// n-defender equilibrium under monotone schedules.
//
// Row i of the maximin matrix lists, in defender i's preference order, the
// maximin coverage i can put on "this target and everything it likes less".
// F(t) is the column maximum at t. The attacked target k* minimizes F (ties
// resolved by the dominance relation in select_kstar); every other target t
// receives F(k*) from a single defender who attains F(t) and prefers k* to t.

#include "nse/error.hpp"
#include "nse/game.hpp"
#include "nse/maximin.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace nse {

/// Values within this distance are treated as equal when grouping F values
/// and matching matrix entries.
inline constexpr double kMatrixTieTol = 1e-7;

struct MonotoneViolation {
    std::size_t defender = 0;
    std::size_t schedule = 0;
    Target preferred = 0;  ///< j with j > t in the defender's order but s(j) > s(t)
    Target other = 0;
};

struct MonotoneCheck {
    bool monotone = true;
    std::optional<MonotoneViolation> violation;
};

/// Every schedule puts weakly less coverage on targets its owner prefers.
inline MonotoneCheck check_monotone(const Game& game) {
    for (std::size_t i = 0; i < game.num_defenders(); ++i) {
        const auto* sched = std::get_if<ExplicitSchedules>(&game.coverage_set(i));
        if (sched == nullptr)
            throw PreconditionError("monotone-schedule check needs explicit schedules; defender " +
                                    std::to_string(i + 1) + " has a flow polytope");
        const PreferenceOrder& pref = game.preference(i);
        for (std::size_t z = 0; z < sched->schedules.size(); ++z) {
            const CoverageVector& s = sched->schedules[z];
            for (std::size_t p = 0; p < pref.size(); ++p) {
                for (std::size_t q = p + 1; q < pref.size(); ++q) {
                    const Target j = pref.at_position(p);
                    const Target t = pref.at_position(q);
                    if (s[j] > s[t]) return {false, MonotoneViolation{i, z, j, t}};
                }
            }
        }
    }
    return {};
}

struct MaximinMatrix {
    /// entries[i][p]: maximin coverage of defender i over the target at
    /// position p of its order together with everything ranked below it.
    std::vector<std::vector<double>> entries;
    /// f_values[t] = max_i entry of defender i at t's position.
    std::vector<double> f_values;
    std::vector<PreferenceOrder> prefs;

    std::size_t num_defenders() const { return entries.size(); }
    std::size_t num_targets() const { return f_values.size(); }
    double at(std::size_t i, Target t) const { return entries[i][prefs[i].position(t)]; }
};

inline MaximinMatrix build_matrix(const Game& game) {
    MaximinMatrix m;
    m.f_values.assign(game.num_targets, 0.0);
    for (std::size_t i = 0; i < game.num_defenders(); ++i) {
        const PreferenceOrder& pref = game.preference(i);
        std::vector<double> row(game.num_targets, 0.0);
        for (std::size_t p = 0; p < game.num_targets; ++p)
            row[p] = maximin_cov(game.coverage_set(i), pref.below_eq(pref.at_position(p))).value.value();
        m.entries.push_back(std::move(row));
        m.prefs.push_back(pref);
    }
    for (Target t = 0; t < game.num_targets; ++t) {
        double f = 0.0;
        for (std::size_t i = 0; i < m.num_defenders(); ++i) f = std::max(f, m.at(i, t));
        m.f_values[t] = f;
    }
    return m;
}

/// Picks the attacked target among the minimizers of F: the lowest-index
/// minimizer k such that no other minimizer t dominates it, where t dominates
/// k when every defender whose entry at t equals min F prefers t to k.
inline Target select_kstar(const MaximinMatrix& m, double tol = kMatrixTieTol) {
    const std::size_t T = m.num_targets();
    if (T == 0) throw ValidationError("select_kstar on an empty matrix");
    const double floor = *std::min_element(m.f_values.begin(), m.f_values.end());
    std::vector<Target> argmin;
    for (Target t = 0; t < T; ++t)
        if (m.f_values[t] <= floor + tol) argmin.push_back(t);

    auto dominates = [&](Target t, Target j) {
        for (std::size_t i = 0; i < m.num_defenders(); ++i)
            if (std::fabs(m.at(i, t) - floor) <= tol && !m.prefs[i].prefers(t, j)) return false;
        return true;
    };
    for (Target k : argmin) {
        const bool undominated = std::none_of(argmin.begin(), argmin.end(),
                                              [&](Target t) { return t != k && dominates(t, k); });
        if (undominated) return k;
    }
    throw SolverError("no undominated minimizer of F; the dominance relation should be acyclic");
}

inline StrategyProfile solve_multi_ms(const Game& game, double tol = kMatrixTieTol) {
    for (std::size_t i = 0; i < game.num_defenders(); ++i)
        if (is_clearance(game.coverage_set(i)))
            throw PreconditionError("monotone-schedule solver requires SSAS schedules; defender " +
                                    std::to_string(i + 1) + " uses clearance");
    const MonotoneCheck ms = check_monotone(game);
    if (!ms.monotone) {
        const MonotoneViolation& v = *ms.violation;
        throw PreconditionError("schedules are not monotone: defender " + std::to_string(v.defender + 1) +
                                ", schedule " + std::to_string(v.schedule + 1) + " covers target " +
                                game.target_name(v.preferred) + " more than less-preferred target " +
                                game.target_name(v.other));
    }

    StrategyProfile profile;
    profile.coverages.assign(game.num_defenders(), CoverageVector(game.num_targets, 0.0));

    // A lone defender faces no rival; the attacker simply hits its favourite.
    if (game.num_defenders() == 1) {
        profile.target = game.preference(0).most_preferred();
        return profile;
    }

    const MaximinMatrix m = build_matrix(game);
    const Target kstar = select_kstar(m, tol);
    const double level = m.f_values[kstar];
    profile.target = kstar;
    for (Target t = 0; t < game.num_targets; ++t) {
        if (t == kstar) continue;
        std::optional<std::size_t> chosen;
        for (std::size_t i = 0; i < game.num_defenders() && !chosen; ++i)
            if (std::fabs(m.at(i, t) - m.f_values[t]) <= tol && m.prefs[i].prefers(kstar, t)) chosen = i;
        if (!chosen)
            throw SolverError("no defender attains F at target " + game.target_name(t) +
                              " while preferring the attacked target");
        profile.coverages[*chosen][t] = level;
    }
    return profile;
}

} // namespace nse

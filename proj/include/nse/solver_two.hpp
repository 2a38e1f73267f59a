#pragma once

// Two-defender equilibrium computation.
//
// For a candidate target t, defender 1 covers the targets defender 2 prefers
// to t at a common height, and vice versa; everything else (including t) is
// left bare. Such a "t-standard" profile is an equilibrium exactly when each
// defender's height can match what the rival could put on the remaining
// targets, which reduces to comparing two maximin values per defender.

#include "nse/error.hpp"
#include "nse/game.hpp"
#include "nse/maximin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nse {

/// Slack accepted in the h >= g comparisons. Boundary equilibria (h == g)
/// are genuine and must survive LP noise.
inline constexpr double kHeightTol = 1e-7;

enum class Efficiency { Efficient, Inefficient };

inline const char* to_string(Efficiency e) { return e == Efficiency::Efficient ? "efficient" : "inefficient"; }

struct EquilibriumTarget {
    Target target = 0;
    /// Heights of the t-standard coverages. When the covered set is empty the
    /// maximin value is +inf; the height is then recorded as 0 and flagged.
    double h1 = 0.0;
    double h2 = 0.0;
    bool unconstrained1 = false;
    bool unconstrained2 = false;
    Efficiency efficiency = Efficiency::Efficient;
};

namespace detail {

inline void require_two_defender_ssas(const Game& game, const char* op) {
    if (game.num_defenders() != 2)
        throw PreconditionError(std::string(op) + " needs exactly 2 defenders, game has " +
                                std::to_string(game.num_defenders()));
    for (std::size_t i = 0; i < 2; ++i)
        if (is_clearance(game.coverage_set(i)))
            throw PreconditionError(std::string(op) + " requires SSAS or flow coverage sets; defender " +
                                    std::to_string(i + 1) + " uses clearance");
}

struct SideBounds {
    ExtendedReal height;  // own maximin over the rival's strictly preferred targets
    ExtendedReal rival;   // rival's maximin over the rest
};

// Side i (0 or 1) at target t.
inline SideBounds side_bounds(const Game& game, Target t, std::size_t i) {
    const std::size_t other = 1 - i;
    const PreferenceOrder& rival_pref = game.preference(other);
    return {maximin_cov(game.coverage_set(i), rival_pref.above(t)).value,
            maximin_cov(game.coverage_set(other), rival_pref.below_eq(t)).value};
}

} // namespace detail

/// Whether defender i (0-based) has some t-standard coverage that survives the
/// rival's best deviation: M_i(rival's targets above t) >= M_rival(rival's
/// targets at or below t).
inline bool partial_set_nonempty(const Game& game, Target t, std::size_t i, double tol = kHeightTol) {
    detail::require_two_defender_ssas(game, "partial_set_nonempty");
    if (i > 1) throw PreconditionError("defender index must be 0 or 1");
    if (t >= game.num_targets) throw ValidationError("target out of range");
    const detail::SideBounds b = detail::side_bounds(game, t, i);
    return b.height.at_least(b.rival, tol);
}

/// Inefficient iff some other target is preferred by both defenders.
inline Efficiency classify_efficiency(const Game& game, Target t) {
    for (Target j = 0; j < game.num_targets; ++j) {
        bool dominated = j != t;
        for (std::size_t i = 0; i < game.num_defenders() && dominated; ++i)
            dominated = game.preference(i).prefers(j, t);
        if (dominated) return Efficiency::Inefficient;
    }
    return Efficiency::Efficient;
}

namespace detail {

inline CoverageVector standard_coverage(std::size_t T, const std::vector<Target>& covered, ExtendedReal height) {
    CoverageVector v(T, 0.0);
    if (covered.empty()) return v;
    for (Target j : covered) v[j] = height.value();
    return v;
}

inline std::optional<StrategyProfile> try_target(const Game& game, Target t, double tol) {
    const SideBounds one = side_bounds(game, t, 0);
    if (!one.height.at_least(one.rival, tol)) return std::nullopt;
    const SideBounds two = side_bounds(game, t, 1);
    if (!two.height.at_least(two.rival, tol)) return std::nullopt;
    StrategyProfile p;
    p.coverages.push_back(standard_coverage(game.num_targets, game.preference(1).above(t), one.height));
    p.coverages.push_back(standard_coverage(game.num_targets, game.preference(0).above(t), two.height));
    p.target = t;
    return p;
}

} // namespace detail

/// The t-standard equilibrium attacking t, if one exists.
inline std::optional<StrategyProfile> build_t_standard(const Game& game, Target t, double tol = kHeightTol) {
    detail::require_two_defender_ssas(game, "build_t_standard");
    if (t >= game.num_targets) throw ValidationError("target out of range");
    return detail::try_target(game, t, tol);
}

/// Scans targets in ascending index order and returns the first t-standard
/// equilibrium found. One always exists for SSAS or flow coverage sets.
inline StrategyProfile solve_two(const Game& game, double tol = kHeightTol) {
    detail::require_two_defender_ssas(game, "solve_two");
    for (Target t = 0; t < game.num_targets; ++t)
        if (auto profile = detail::try_target(game, t, tol)) return *profile;
    throw SolverError("existence violated: no target admits a t-standard equilibrium");
}

/// Every target attacked in some equilibrium, with heights and efficiency.
inline std::vector<EquilibriumTarget> enumerate_equilibrium_targets(const Game& game, double tol = kHeightTol) {
    detail::require_two_defender_ssas(game, "enumerate_equilibrium_targets");
    std::vector<EquilibriumTarget> out;
    for (Target t = 0; t < game.num_targets; ++t) {
        const detail::SideBounds one = detail::side_bounds(game, t, 0);
        if (!one.height.at_least(one.rival, tol)) continue;
        const detail::SideBounds two = detail::side_bounds(game, t, 1);
        if (!two.height.at_least(two.rival, tol)) continue;
        EquilibriumTarget e;
        e.target = t;
        e.h1 = one.height.value_or(0.0);
        e.h2 = two.height.value_or(0.0);
        e.unconstrained1 = one.height.is_infinite();
        e.unconstrained2 = two.height.is_infinite();
        e.efficiency = classify_efficiency(game, t);
        out.push_back(e);
    }
    if (out.empty()) throw SolverError("existence violated: no equilibrium target found");
    return out;
}

} // namespace nse

#pragma once

// Definition-level equilibrium checking.
//
// A profile (v, t) is an equilibrium when t is a minimum-coverage target and
// no defender i can move to some v' in its coverage set that makes a target
// t' it strictly prefers to t the attacker's choice, with attacker ties
// broken against i. For a fixed (i, t') that question is one LP: maximize the
// margin by which every target i likes less than t' out-covers t', subject to
// t' being no more covered than the targets i likes more.

#include "nse/error.hpp"
#include "nse/game.hpp"
#include "nse/lp.hpp"
#include "nse/maximin.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace nse {

struct VerifyOptions {
    /// Coverage gap treated as a tie by the attacker.
    double tie_tol = kDefaultTieTol;
    /// A deviation counts only if its margin exceeds this.
    double strict_margin = 1e-6;
    /// Slack for the coverage-set membership pre-check.
    double membership_tol = 1e-7;
};

struct DeviationResult {
    /// Optimal margin; -inf when t' cannot even be made a weak minimum over
    /// the targets i prefers to it.
    double margin = -std::numeric_limits<double>::infinity();
    /// Present only when margin > strict threshold.
    std::optional<CoverageVector> deviation;

    bool profitable() const { return deviation.has_value(); }
};

/// Best deviation of defender i (0-based) that steers the attack to t_hat.
/// Requires t_hat strictly preferred by i to the profile's target.
inline DeviationResult deviation_exists(const Game& game, const StrategyProfile& profile, std::size_t i,
                                        Target t_hat, double strict_margin = 1e-6) {
    validate_profile(game, profile);
    if (i >= game.num_defenders()) throw ValidationError("defender index out of range");
    const PreferenceOrder& pref = game.preference(i);
    if (t_hat >= game.num_targets || !pref.prefers(t_hat, profile.target))
        throw PreconditionError("deviation target must be strictly preferred to the attacked target");

    const std::size_t T = game.num_targets;
    CoverageVector others(T, 0.0);
    for (std::size_t d = 0; d < game.num_defenders(); ++d)
        if (d != i)
            for (Target k = 0; k < T; ++k) others[k] += profile.coverages[d][k];

    lp::Model model;
    const CoverageSet& set = game.coverage_set(i);
    const std::vector<lp::Expression> supply = embed(set, model);
    const lp::Sense link = is_clearance(set) ? lp::Sense::Equal : lp::Sense::LessEqual;
    std::vector<std::size_t> cover(T);
    for (Target k = 0; k < T; ++k) {
        cover[k] = model.add_variable();
        lp::Expression row = {{cover[k], 1.0}};
        for (const lp::Term& term : supply[k]) row.push_back({term.var, -term.coef});
        model.add_constraint(std::move(row), link, 0.0);
    }
    const std::size_t margin = model.add_variable(1.0, /*free=*/true);

    for (Target k = 0; k < T; ++k) {
        if (k == t_hat) continue;
        // cover[t_hat] - cover[k] (+ margin) <= others[k] - others[t_hat]
        lp::Expression row = {{cover[t_hat], 1.0}, {cover[k], -1.0}};
        if (pref.prefers(t_hat, k)) row.push_back({margin, 1.0});
        model.add_constraint(std::move(row), lp::Sense::LessEqual, others[k] - others[t_hat]);
    }

    const lp::Solution sol = model.maximize();
    DeviationResult out;
    if (sol.status == lp::Status::Infeasible) return out;
    if (!sol.optimal()) throw SolverError(std::string("deviation LP failed: ") + lp::to_string(sol.status));
    out.margin = sol.values[margin];
    if (out.margin > strict_margin) {
        CoverageVector dev(T);
        for (Target k = 0; k < T; ++k) dev[k] = std::max(0.0, sol.values[cover[k]]);
        out.deviation = std::move(dev);
    }
    return out;
}

struct WitnessDeviation {
    std::size_t defender = 0;
    CoverageVector deviation;
    Target induced_target = 0;
    double margin = 0.0;
};

struct VerificationReport {
    /// Each v^i lies in V^i (within membership_tol).
    bool feasible = true;
    std::vector<bool> per_defender_feasible;
    bool aic = false;
    std::vector<bool> per_defender_ic;
    std::vector<WitnessDeviation> witness_deviations;
    VerifyOptions tolerances;

    bool ic() const {
        for (bool b : per_defender_ic)
            if (!b) return false;
        return true;
    }
    bool is_nse() const { return feasible && aic && ic(); }
};

inline VerificationReport verify_nse(const Game& game, const StrategyProfile& profile,
                                     const VerifyOptions& opts = {}) {
    validate_game(game);
    validate_profile(game, profile);
    VerificationReport report;
    report.tolerances = opts;

    for (std::size_t i = 0; i < game.num_defenders(); ++i) {
        const bool ok = membership(game.coverage_set(i), profile.coverages[i], opts.membership_tol);
        report.per_defender_feasible.push_back(ok);
        report.feasible = report.feasible && ok;
    }

    const CoverageVector total = total_coverage(profile);
    report.aic = contains(best_response_set(total, opts.tie_tol), profile.target);

    for (std::size_t i = 0; i < game.num_defenders(); ++i) {
        bool ic = true;
        for (Target t_hat : game.preference(i).above(profile.target)) {
            DeviationResult dev = deviation_exists(game, profile, i, t_hat, opts.strict_margin);
            if (dev.profitable()) {
                report.witness_deviations.push_back({i, std::move(*dev.deviation), t_hat, dev.margin});
                ic = false;
                break;
            }
        }
        report.per_defender_ic.push_back(ic);
    }
    return report;
}

} // namespace nse

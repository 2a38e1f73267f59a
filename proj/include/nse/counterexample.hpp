#pragma once

// Non-existence certificate for two-defender, two-schedule clearance games.
//
// Under clearance each defender's coverage is pinned down by one mixing
// weight w in [0, 1] (the probability of its first schedule). Fix a candidate
// target t and a deviator d with targets it prefers to t. For each pure
// schedule s of d, aim at the preferred target a where s is lowest. If the
// rival's mixture leaves every target d ranks at or below t strictly more
// covered than a, deviating to s makes the attacker pick a preferred target.
// So an equilibrium at t needs, for every s, some such target k with
//
//     total(k) <= total(a),
//
// which is one linear inequality in the rival's weight per k. The union over
// k, intersected over s, must meet [0, 1]; if it is empty for any deviator,
// no equilibrium attacks t.

#include "nse/error.hpp"
#include "nse/game.hpp"
#include "nse/generators.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace nse {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Disjoint closed intervals sorted by lo.
using IntervalSet = std::vector<Interval>;

inline IntervalSet normalize(IntervalSet set) {
    std::sort(set.begin(), set.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    IntervalSet out;
    for (const Interval& iv : set) {
        if (iv.lo > iv.hi) continue;
        if (!out.empty() && iv.lo <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, iv.hi);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

inline IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out;
    for (const Interval& x : a)
        for (const Interval& y : b) {
            const Interval z{std::max(x.lo, y.lo), std::min(x.hi, y.hi)};
            if (z.lo <= z.hi) out.push_back(z);
        }
    return normalize(std::move(out));
}

enum class Bound { AtMost, AtLeast, Always, Never };

inline const char* to_string(Bound b) {
    switch (b) {
    case Bound::AtMost: return "<=";
    case Bound::AtLeast: return ">=";
    case Bound::Always: return "always";
    case Bound::Never: return "never";
    }
    return "?";
}

/// coefficient * w <= rhs, i.e. total(blocker) <= total(aimed).
struct BlockingCondition {
    Target blocker = 0;
    double coefficient = 0.0;
    double rhs = 0.0;
    Bound bound = Bound::Never;
    /// rhs / coefficient for AtMost / AtLeast.
    std::optional<double> threshold;
    /// Solution set restricted to [0, 1]; empty or a single interval.
    IntervalSet feasible;
};

struct DeviationTest {
    std::size_t schedule = 0;
    Target aimed = 0;
    std::vector<BlockingCondition> conditions;
    /// Union of the conditions' feasible sets.
    IntervalSet blocked;
};

struct DeviatorAnalysis {
    std::size_t deviator = 0;
    /// The defender whose mixing weight is the variable.
    std::size_t mixer = 0;
    std::vector<DeviationTest> tests;
    /// Weights blocking every test.
    IntervalSet surviving;
};

struct TargetAnalysis {
    Target target = 0;
    std::vector<DeviatorAnalysis> deviators;
    bool refuted = false;
};

struct CounterexampleCertificate {
    std::vector<TargetAnalysis> targets;
    /// False only when every candidate target is refuted.
    bool exists_nse = true;
};

namespace detail {

inline BlockingCondition blocking_condition(Target blocker, double coefficient, double rhs) {
    constexpr double kZero = 1e-12;
    BlockingCondition c{blocker, coefficient, rhs, Bound::Never, std::nullopt, {}};
    if (std::fabs(coefficient) <= kZero) {
        c.bound = rhs >= -kZero ? Bound::Always : Bound::Never;
        if (c.bound == Bound::Always) c.feasible = {{0.0, 1.0}};
        return c;
    }
    const double x = rhs / coefficient;
    c.threshold = x;
    c.bound = coefficient > 0 ? Bound::AtMost : Bound::AtLeast;
    const Interval iv = c.bound == Bound::AtMost ? Interval{0.0, std::min(1.0, x)} : Interval{std::max(0.0, x), 1.0};
    if (iv.lo <= iv.hi) c.feasible = {iv};
    return c;
}

} // namespace detail

/// Certificate for any two-defender game in which each defender mixes two
/// schedules under clearance.
inline CounterexampleCertificate certify_two_schedule_game(const Game& game) {
    validate_game(game);
    if (game.num_defenders() != 2) throw PreconditionError("certificate needs exactly two defenders");
    std::vector<const ExplicitSchedules*> sched(2);
    for (std::size_t i = 0; i < 2; ++i) {
        sched[i] = std::get_if<ExplicitSchedules>(&game.coverage_set(i));
        if (sched[i] == nullptr || sched[i]->mode != ScheduleMode::Clearance || sched[i]->schedules.size() != 2)
            throw PreconditionError("certificate needs two clearance schedules per defender");
    }

    CounterexampleCertificate cert;
    cert.exists_nse = false;
    for (Target t = 0; t < game.num_targets; ++t) {
        TargetAnalysis ta;
        ta.target = t;
        for (std::size_t d = 0; d < 2; ++d) {
            const PreferenceOrder& pref = game.preference(d);
            const std::vector<Target> improving = pref.above(t);
            if (improving.empty()) continue;
            const std::size_t mixer = 1 - d;
            const CoverageVector& a = sched[mixer]->schedules[0];
            const CoverageVector& b = sched[mixer]->schedules[1];

            DeviatorAnalysis da;
            da.deviator = d;
            da.mixer = mixer;
            da.surviving = {{0.0, 1.0}};
            for (std::size_t z = 0; z < 2; ++z) {
                const CoverageVector& s = sched[d]->schedules[z];
                DeviationTest test;
                test.schedule = z;
                test.aimed = *std::min_element(improving.begin(), improving.end(),
                                               [&](Target x, Target y) { return s[x] < s[y]; });
                const Target aim = test.aimed;
                // total(x) = w (a(x) - b(x)) + b(x) + s(x)
                for (Target k : pref.below_eq(t)) {
                    const double coef = (a[k] - b[k]) - (a[aim] - b[aim]);
                    const double rhs = (b[aim] + s[aim]) - (b[k] + s[k]);
                    BlockingCondition c = detail::blocking_condition(k, coef, rhs);
                    test.blocked.insert(test.blocked.end(), c.feasible.begin(), c.feasible.end());
                    test.conditions.push_back(std::move(c));
                }
                test.blocked = normalize(std::move(test.blocked));
                da.surviving = intersect(da.surviving, test.blocked);
                da.tests.push_back(std::move(test));
            }
            if (da.surviving.empty()) ta.refuted = true;
            ta.deviators.push_back(std::move(da));
        }
        if (!ta.refuted) cert.exists_nse = true;
        cert.targets.push_back(std::move(ta));
    }
    return cert;
}

/// Certificate for the 2x2 grid fixture under clearance.
inline CounterexampleCertificate certify_counterexample(double epsilon, double k) {
    return certify_two_schedule_game(example1(epsilon, k, ScheduleMode::Clearance));
}

} // namespace nse

#pragma once

// Core domain types for multi-defender security games: targets, preference
// orders, coverage vectors, strategy profiles, and the attacker's
// minimum-coverage best response.
//
// Targets are 0-based internally. File formats and user-facing output are
// 1-based; conversion happens in io.hpp and the CLI.

#include "nse/coverage_set.hpp"
#include "nse/error.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace nse {

/// Default tolerance for "equal coverage" when forming the attacker's best
/// response. Coverage is normalized to one unit of resource per defender.
inline constexpr double kDefaultTieTol = 1e-9;

/// A strict total order over targets, stored most-preferred-first.
/// "Preferred" means the defender would rather see that target attacked.
class PreferenceOrder {
public:
    PreferenceOrder() = default;

    explicit PreferenceOrder(std::vector<Target> ranking) : ranking_(std::move(ranking)) {
        position_.assign(ranking_.size(), kUnset);
        for (std::size_t p = 0; p < ranking_.size(); ++p) {
            const Target t = ranking_[p];
            if (t >= ranking_.size() || position_[t] != kUnset)
                throw ValidationError("preference order is not a permutation of the targets");
            position_[t] = p;
        }
    }

    /// Identity order 0 > 1 > ... > T-1.
    static PreferenceOrder identity(std::size_t num_targets) {
        std::vector<Target> r(num_targets);
        std::iota(r.begin(), r.end(), Target{0});
        return PreferenceOrder(std::move(r));
    }

    std::size_t size() const { return ranking_.size(); }
    const std::vector<Target>& ranking() const { return ranking_; }

    /// 0-based position of t in the ranking (0 = most preferred).
    std::size_t position(Target t) const { return position_.at(t); }
    /// 1-based rank of t.
    std::size_t rank(Target t) const { return position(t) + 1; }
    Target at_position(std::size_t p) const { return ranking_.at(p); }
    Target most_preferred() const { return ranking_.front(); }

    /// j is strictly preferred to k.
    bool prefers(Target j, Target k) const { return position(j) < position(k); }

    std::vector<Target> above(Target t) const { return slice(0, position(t)); }
    std::vector<Target> above_eq(Target t) const { return slice(0, position(t) + 1); }
    std::vector<Target> below(Target t) const { return slice(position(t) + 1, size()); }
    std::vector<Target> below_eq(Target t) const { return slice(position(t), size()); }

    bool operator==(const PreferenceOrder& other) const { return ranking_ == other.ranking_; }

private:
    static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

    // Returned sets are sorted by target index.
    std::vector<Target> slice(std::size_t from, std::size_t to) const {
        std::vector<Target> out(ranking_.begin() + static_cast<std::ptrdiff_t>(from),
                                ranking_.begin() + static_cast<std::ptrdiff_t>(to));
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<Target> ranking_;
    std::vector<std::size_t> position_;
};

struct Defender {
    PreferenceOrder preference;
    CoverageSet coverage_set;
};

struct GameMetadata {
    std::string label;
    std::uint64_t seed = 0;
    /// Optional display names for targets, e.g. "11", "12", ... for the 2x2 grid.
    std::vector<std::string> target_labels;
};

struct Game {
    std::size_t num_targets = 0;
    std::vector<Defender> defenders;
    GameMetadata metadata;

    std::size_t num_defenders() const { return defenders.size(); }
    const PreferenceOrder& preference(std::size_t i) const { return defenders.at(i).preference; }
    const CoverageSet& coverage_set(std::size_t i) const { return defenders.at(i).coverage_set; }

    std::string target_name(Target t) const {
        if (t < metadata.target_labels.size()) return metadata.target_labels[t];
        return std::to_string(t + 1);
    }
};

struct StrategyProfile {
    std::vector<CoverageVector> coverages;
    Target target = 0;
};

/// Throws ValidationError describing the first broken invariant.
inline void validate_game(const Game& game) {
    if (game.num_targets == 0) throw ValidationError("game must have at least one target");
    if (game.defenders.empty()) throw ValidationError("game must have at least one defender");
    for (std::size_t i = 0; i < game.defenders.size(); ++i) {
        const Defender& d = game.defenders[i];
        const std::string who = "defender " + std::to_string(i + 1);
        if (d.preference.size() != game.num_targets)
            throw ValidationError(who + ": preference order ranks " + std::to_string(d.preference.size()) +
                                  " targets, game has " + std::to_string(game.num_targets));
        validate_coverage_set(d.coverage_set, who);
        if (num_targets(d.coverage_set) != game.num_targets)
            throw ValidationError(who + ": coverage set spans " + std::to_string(num_targets(d.coverage_set)) +
                                  " targets, game has " + std::to_string(game.num_targets));
    }
    if (!game.metadata.target_labels.empty() && game.metadata.target_labels.size() != game.num_targets)
        throw ValidationError("metadata.target_labels must name every target");
}

/// Throws ValidationError unless the profile fits the game's dimensions.
inline void validate_profile(const Game& game, const StrategyProfile& profile) {
    if (profile.coverages.size() != game.num_defenders())
        throw ValidationError("profile has " + std::to_string(profile.coverages.size()) +
                              " coverage vectors, game has " + std::to_string(game.num_defenders()) +
                              " defenders");
    for (std::size_t i = 0; i < profile.coverages.size(); ++i) {
        if (profile.coverages[i].size() != game.num_targets)
            throw ValidationError("coverage vector " + std::to_string(i + 1) + " has wrong length");
        for (double x : profile.coverages[i])
            if (!(x >= 0.0)) throw ValidationError("coverage vector " + std::to_string(i + 1) + " has a negative entry");
    }
    if (profile.target >= game.num_targets) throw ValidationError("attacked target out of range");
}

inline CoverageVector total_coverage(std::span<const CoverageVector> coverages) {
    if (coverages.empty()) throw ValidationError("total coverage of an empty profile");
    CoverageVector total(coverages.front().size(), 0.0);
    for (const CoverageVector& v : coverages) {
        if (v.size() != total.size()) throw ValidationError("coverage vectors differ in length");
        for (std::size_t j = 0; j < v.size(); ++j) total[j] += v[j];
    }
    return total;
}

inline CoverageVector total_coverage(const StrategyProfile& profile) {
    return total_coverage(std::span<const CoverageVector>(profile.coverages));
}

/// Targets whose total coverage is within tie_tol of the minimum, sorted.
inline std::vector<Target> best_response_set(std::span<const double> total, double tie_tol = kDefaultTieTol) {
    std::vector<Target> out;
    if (total.empty()) return out;
    const double lowest = *std::min_element(total.begin(), total.end());
    for (Target t = 0; t < total.size(); ++t)
        if (total[t] <= lowest + tie_tol) out.push_back(t);
    return out;
}

inline bool contains(std::span<const Target> set, Target t) {
    return std::find(set.begin(), set.end(), t) != set.end();
}

/// AIC with attacker ties broken against defender i: t is a best response and
/// every tied target is weakly preferred by i to t.
inline bool is_waic(const Game& game, const StrategyProfile& profile, std::size_t i,
                    double tie_tol = kDefaultTieTol) {
    const CoverageVector total = total_coverage(profile);
    const std::vector<Target> best = best_response_set(total, tie_tol);
    if (!contains(best, profile.target)) return false;
    const PreferenceOrder& pref = game.preference(i);
    return std::all_of(best.begin(), best.end(),
                       [&](Target k) { return !pref.prefers(profile.target, k); });
}

} // namespace nse

#pragma once

// MaximinCov oracle and polytope membership.

#include "nse/coverage_set.hpp"
#include "nse/error.hpp"
#include "nse/lp.hpp"

#include <algorithm>
#include <compare>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nse {

/// A real number or +infinity. Serialized as the string "inf".
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr explicit ExtendedReal(double value) : value_(value) {}

    static constexpr ExtendedReal infinity() {
        ExtendedReal r;
        r.infinite_ = true;
        return r;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    /// Finite value; throws on infinity.
    double value() const {
        if (infinite_) throw SolverError("finite value requested from +inf");
        return value_;
    }

    /// Finite value, or `fallback` for +inf.
    constexpr double value_or(double fallback) const { return infinite_ ? fallback : value_; }

    /// `*this >= other - tol`, with inf >= everything.
    constexpr bool at_least(ExtendedReal other, double tol) const {
        if (infinite_) return true;
        if (other.infinite_) return false;
        return value_ >= other.value_ - tol;
    }

    constexpr std::partial_ordering operator<=>(const ExtendedReal& other) const {
        if (infinite_ || other.infinite_) return infinite_ <=> other.infinite_;
        return value_ <=> other.value_;
    }
    constexpr bool operator==(const ExtendedReal& other) const {
        return infinite_ == other.infinite_ && (infinite_ || value_ == other.value_);
    }

    std::string to_string() const {
        if (infinite_) return "inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", value_);
        return buf;
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

struct MaximinResult {
    ExtendedReal value;
    /// Attaining coverage; absent when the subset is empty.
    std::optional<CoverageVector> witness;
};

namespace detail {

// Zero-sum game between the schedules and the subset, payoffs shifted by one
// so the value is positive. The subset player's LP  max 1'w  s.t.  Pw <= 1
// has optimum 1/value and its duals are the defender's optimal mixture.
inline MaximinResult maximin_explicit(const ExplicitSchedules& set, std::span<const Target> subset,
                                      std::size_t T) {
    constexpr double kShift = 1.0;
    lp::Model model;
    std::vector<std::size_t> w;
    for (std::size_t k = 0; k < subset.size(); ++k) w.push_back(model.add_variable(1.0));
    for (const CoverageVector& sched : set.schedules) {
        lp::Expression row;
        for (std::size_t k = 0; k < subset.size(); ++k) row.push_back({w[k], sched[subset[k]] + kShift});
        model.add_constraint(std::move(row), lp::Sense::LessEqual, 1.0);
    }
    const lp::Solution sol = model.maximize();
    if (!sol.optimal()) throw SolverError(std::string("maximin LP failed: ") + lp::to_string(sol.status));

    double mass = 0.0;
    for (double y : sol.duals) mass += std::max(0.0, y);
    if (!(mass > 0.0)) throw SolverError("maximin LP failed: no mixture recovered");
    CoverageVector witness(T, 0.0);
    for (std::size_t z = 0; z < set.schedules.size(); ++z) {
        const double weight = std::max(0.0, sol.duals[z]) / mass;
        if (weight == 0.0) continue;
        for (Target t = 0; t < T; ++t) witness[t] += weight * set.schedules[z][t];
    }
    double value = std::numeric_limits<double>::infinity();
    for (Target t : subset) value = std::min(value, witness[t]);
    return {ExtendedReal(std::max(0.0, value)), std::move(witness)};
}

} // namespace detail

/// Largest h such that some coverage in the set gives every target of
/// `subset` at least h. +inf for an empty subset.
inline MaximinResult maximin_cov(const CoverageSet& set, std::span<const Target> subset) {
    if (subset.empty()) return {ExtendedReal::infinity(), std::nullopt};
    const std::size_t T = num_targets(set);
    for (Target t : subset)
        if (t >= T) throw ValidationError("maximin subset references target " + std::to_string(t + 1));

    if (const auto* sched = std::get_if<ExplicitSchedules>(&set)) return detail::maximin_explicit(*sched, subset, T);

    lp::Model model;
    const std::vector<lp::Expression> supply = embed(set, model);
    const std::size_t h = model.add_variable(1.0);
    for (Target t : subset) {
        lp::Expression row = {{h, 1.0}};
        for (const lp::Term& term : supply[t]) row.push_back({term.var, -term.coef});
        model.add_constraint(std::move(row), lp::Sense::LessEqual, 0.0);
    }
    const lp::Solution sol = model.maximize();
    if (!sol.optimal()) throw SolverError(std::string("maximin LP failed: ") + lp::to_string(sol.status));

    CoverageVector witness(T, 0.0);
    for (Target t = 0; t < T; ++t) witness[t] = std::max(0.0, lp::evaluate(supply[t], sol.values));
    return {ExtendedReal(std::max(0.0, sol.values[h])), std::move(witness)};
}

/// Whether v lies in the set, allowing every defining constraint to be
/// violated by at most tol.
inline bool membership(const CoverageSet& set, std::span<const double> v, double tol = 1e-7) {
    const std::size_t T = num_targets(set);
    if (v.size() != T) throw ValidationError("membership: coverage vector has wrong length");
    for (double x : v)
        if (x < -tol) return false;

    lp::Model model;
    const std::vector<lp::Expression> supply = embed(set, model);
    const bool exact = is_clearance(set);
    for (Target t = 0; t < T; ++t) {
        model.add_constraint(supply[t], lp::Sense::GreaterEqual, v[t] - tol);
        if (exact) model.add_constraint(supply[t], lp::Sense::LessEqual, v[t] + tol);
    }
    const lp::Solution sol = model.maximize();
    if (sol.status == lp::Status::Infeasible) return false;
    if (!sol.optimal()) throw SolverError(std::string("membership LP failed: ") + lp::to_string(sol.status));
    return true;
}

} // namespace nse

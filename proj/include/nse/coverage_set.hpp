#pragma once

// Attainable-coverage polytopes.
//
// A defender's coverage set is either a finite list of schedules (mixed under
// the clearance rule, or under the more permissive rule that allows dropping
// coverage from any mixture), or the unit-flow polytope of a layered patrol
// network. Every variant can be embedded into an LP model, which yields one
// linear expression per target for the coverage the defender can supply.

#include "nse/error.hpp"
#include "nse/lp.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace nse {

using Target = std::size_t;
using CoverageVector = std::vector<double>;

enum class ScheduleMode {
    Ssas,       ///< any coverage dominated by a schedule mixture is attainable
    Clearance,  ///< only exact schedule mixtures are attainable
};

inline const char* to_string(ScheduleMode mode) {
    return mode == ScheduleMode::Ssas ? "ssas" : "clearance";
}

struct ExplicitSchedules {
    std::vector<CoverageVector> schedules;
    ScheduleMode mode = ScheduleMode::Ssas;
    /// Needed when there are no schedules to infer the width from.
    std::size_t num_targets = 0;
};

/// L x w grid DAG between a source and a sink. A patrol moves from layer to
/// layer and changes level by at most one. Intermediate vertex (layer, level)
/// is target layer * width + level.
class LayeredNetwork {
public:
    struct Edge {
        std::size_t from;
        std::size_t to;
    };

    LayeredNetwork(std::size_t layers, std::size_t width) : layers_(layers), width_(width) {
        if (layers == 0 || width == 0) throw ValidationError("layered network needs layers >= 1 and width >= 1");
        for (std::size_t a = 0; a < width_; ++a) edges_.push_back({source(), vertex(0, a)});
        for (std::size_t l = 0; l + 1 < layers_; ++l)
            for (std::size_t a = 0; a < width_; ++a)
                for (std::size_t b = (a == 0 ? 0 : a - 1); b <= a + 1 && b < width_; ++b)
                    edges_.push_back({vertex(l, a), vertex(l + 1, b)});
        for (std::size_t a = 0; a < width_; ++a) edges_.push_back({vertex(layers_ - 1, a), sink()});
    }

    std::size_t layers() const { return layers_; }
    std::size_t width() const { return width_; }
    std::size_t num_targets() const { return layers_ * width_; }

    // Vertex ids: intermediate vertices first (equal to their target index),
    // then source, then sink.
    std::size_t vertex(std::size_t layer, std::size_t level) const { return layer * width_ + level; }
    std::size_t source() const { return num_targets(); }
    std::size_t sink() const { return num_targets() + 1; }
    std::size_t num_vertices() const { return num_targets() + 2; }
    Target target_of(std::size_t layer, std::size_t level) const { return vertex(layer, level); }

    const std::vector<Edge>& edges() const { return edges_; }

    bool operator==(const LayeredNetwork& other) const {
        return layers_ == other.layers_ && width_ == other.width_;
    }

private:
    std::size_t layers_;
    std::size_t width_;
    std::vector<Edge> edges_;
};

struct FlowPolytope {
    LayeredNetwork network;
};

using CoverageSet = std::variant<ExplicitSchedules, FlowPolytope>;

inline std::size_t num_targets(const CoverageSet& set) {
    if (const auto* s = std::get_if<ExplicitSchedules>(&set)) {
        return s->schedules.empty() ? s->num_targets : s->schedules.front().size();
    }
    return std::get<FlowPolytope>(set).network.num_targets();
}

inline bool is_clearance(const CoverageSet& set) {
    const auto* s = std::get_if<ExplicitSchedules>(&set);
    return s != nullptr && s->mode == ScheduleMode::Clearance;
}

inline void validate_coverage_set(const CoverageSet& set, const std::string& who) {
    const auto* s = std::get_if<ExplicitSchedules>(&set);
    if (s == nullptr) return;  // layered networks are valid by construction
    if (s->schedules.empty()) throw ValidationError(who + ": needs at least one schedule");
    const std::size_t width = s->schedules.front().size();
    for (const CoverageVector& sched : s->schedules) {
        if (sched.size() != width) throw ValidationError(who + ": schedules differ in length");
        for (double x : sched)
            if (!(x >= 0.0)) throw ValidationError(who + ": schedule entries must be non-negative");
    }
}

/// Adds the variables and constraints describing the set's generators to
/// `model` and returns, per target, the expression for the coverage those
/// generators deliver (a schedule mixture, or the flow through the target's
/// vertex). Whether a coverage may lie below that expression or must equal
/// it is the caller's business; see is_clearance().
inline std::vector<lp::Expression> embed(const CoverageSet& set, lp::Model& model) {
    const std::size_t T = num_targets(set);
    std::vector<lp::Expression> supply(T);

    if (const auto* s = std::get_if<ExplicitSchedules>(&set)) {
        lp::Expression mass;
        for (const CoverageVector& sched : s->schedules) {
            const std::size_t x = model.add_variable();
            mass.push_back({x, 1.0});
            for (Target t = 0; t < T; ++t)
                if (sched[t] != 0.0) supply[t].push_back({x, sched[t]});
        }
        // Under SSAS a mixture of total weight below one is dominated by a
        // full mixture, so the inequality describes the same set.
        model.add_constraint(std::move(mass),
                             s->mode == ScheduleMode::Clearance ? lp::Sense::Equal : lp::Sense::LessEqual, 1.0);
        return supply;
    }

    const LayeredNetwork& net = std::get<FlowPolytope>(set).network;
    std::vector<lp::Expression> inflow(net.num_vertices());
    std::vector<lp::Expression> outflow(net.num_vertices());
    for (const auto& e : net.edges()) {
        const std::size_t f = model.add_variable();
        outflow[e.from].push_back({f, 1.0});
        inflow[e.to].push_back({f, 1.0});
    }
    model.add_constraint(outflow[net.source()], lp::Sense::Equal, 1.0);
    for (Target t = 0; t < T; ++t) {
        lp::Expression balance = inflow[t];
        for (const lp::Term& term : outflow[t]) balance.push_back({term.var, -term.coef});
        model.add_constraint(std::move(balance), lp::Sense::Equal, 0.0);
        supply[t] = inflow[t];
    }
    return supply;
}

/// Number of source-sink paths, saturating at UINT64_MAX.
inline std::uint64_t count_paths(const LayeredNetwork& net) {
    const std::size_t w = net.width();
    std::vector<std::uint64_t> ways(w, 1);
    for (std::size_t l = 1; l < net.layers(); ++l) {
        std::vector<std::uint64_t> next(w, 0);
        for (std::size_t b = 0; b < w; ++b) {
            for (std::size_t a = (b == 0 ? 0 : b - 1); a <= b + 1 && a < w; ++a) {
                const std::uint64_t add = ways[a];
                next[b] = (next[b] > UINT64_MAX - add) ? UINT64_MAX : next[b] + add;
            }
        }
        ways = std::move(next);
    }
    std::uint64_t total = 0;
    for (std::uint64_t x : ways) total = (total > UINT64_MAX - x) ? UINT64_MAX : total + x;
    return total;
}

inline constexpr std::uint64_t kDefaultPathCap = 100000;

/// Indicator coverage of every source-sink path, in lexicographic order of
/// level sequences. Refuses when the path count exceeds `cap`.
inline std::vector<CoverageVector> enumerate_paths(const LayeredNetwork& net,
                                                   std::uint64_t cap = kDefaultPathCap) {
    const std::uint64_t count = count_paths(net);
    if (count > cap)
        throw RefusalError("layered network has " + std::to_string(count) + " paths, above the cap of " +
                           std::to_string(cap));
    std::vector<CoverageVector> paths;
    paths.reserve(count);
    std::vector<std::size_t> levels;
    CoverageVector indicator(net.num_targets(), 0.0);
    auto dfs = [&](auto&& self, std::size_t layer) -> void {
        if (layer == net.layers()) {
            paths.push_back(indicator);
            return;
        }
        std::size_t lo = 0, hi = net.width() - 1;
        if (layer > 0) {
            const std::size_t prev = levels.back();
            lo = prev == 0 ? 0 : prev - 1;
            hi = std::min(prev + 1, net.width() - 1);
        }
        for (std::size_t a = lo; a <= hi; ++a) {
            levels.push_back(a);
            indicator[net.target_of(layer, a)] = 1.0;
            self(self, layer + 1);
            indicator[net.target_of(layer, a)] = 0.0;
            levels.pop_back();
        }
    };
    dfs(dfs, 0);
    return paths;
}

} // namespace nse

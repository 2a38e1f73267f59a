#pragma once

// JSON file formats. Targets are 1-based on disk.

#include "nse/counterexample.hpp"
#include "nse/error.hpp"
#include "nse/game.hpp"
#include "nse/generators.hpp"
#include "nse/maximin.hpp"
#include "nse/solver_two.hpp"
#include "nse/verifier.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace nse::io {

using json = nlohmann::ordered_json;

inline json to_json(const ExtendedReal& x) {
    if (x.is_infinite()) return "inf";
    return x.value();
}

inline ExtendedReal extended_real_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return ExtendedReal::infinity();
    if (j.is_number()) return ExtendedReal(j.get<double>());
    throw ValidationError("expected a number or \"inf\"");
}

inline json to_json(const CoverageSet& set) {
    if (const auto* s = std::get_if<ExplicitSchedules>(&set)) {
        return {{"type", "schedules"}, {"mode", to_string(s->mode)}, {"schedules", s->schedules}};
    }
    const LayeredNetwork& net = std::get<FlowPolytope>(set).network;
    return {{"type", "layered_network"}, {"layers", net.layers()}, {"width", net.width()}};
}

inline std::vector<Target> targets_from_json(const json& j, std::size_t num_targets, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array of target ids");
    std::vector<Target> out;
    for (const json& x : j) {
        if (!x.is_number_integer()) throw ValidationError(what + " must contain integer target ids");
        const long long id = x.get<long long>();
        if (id < 1 || static_cast<std::size_t>(id) > num_targets)
            throw ValidationError(what + " has target id " + std::to_string(id) + " outside 1.." +
                                  std::to_string(num_targets));
        out.push_back(static_cast<Target>(id - 1));
    }
    return out;
}

inline json targets_to_json(const std::vector<Target>& targets) {
    json out = json::array();
    for (Target t : targets) out.push_back(t + 1);
    return out;
}

inline CoverageSet coverage_set_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type")) throw ValidationError("coverage_set must be an object with a type");
    const std::string type = j.at("type").get<std::string>();
    if (type == "schedules") {
        ExplicitSchedules s;
        const std::string mode = j.value("mode", std::string("ssas"));
        if (mode == "ssas") {
            s.mode = ScheduleMode::Ssas;
        } else if (mode == "clearance") {
            s.mode = ScheduleMode::Clearance;
        } else {
            throw ValidationError("coverage_set mode must be ssas or clearance, got '" + mode + "'");
        }
        s.schedules = j.at("schedules").get<std::vector<CoverageVector>>();
        if (!s.schedules.empty()) s.num_targets = s.schedules.front().size();
        return s;
    }
    if (type == "layered_network") {
        const long long layers = j.at("layers").get<long long>();
        const long long width = j.at("width").get<long long>();
        if (layers < 1 || width < 1) throw ValidationError("layered_network needs layers >= 1 and width >= 1");
        return FlowPolytope{LayeredNetwork(static_cast<std::size_t>(layers), static_cast<std::size_t>(width))};
    }
    throw ValidationError("unknown coverage_set type '" + type + "'");
}

inline json to_json(const Game& game) {
    json defenders = json::array();
    for (const Defender& d : game.defenders)
        defenders.push_back({{"preference", targets_to_json(d.preference.ranking())},
                             {"coverage_set", to_json(d.coverage_set)}});
    json meta = {{"label", game.metadata.label}, {"seed", game.metadata.seed},
                 {"generator_version", kGeneratorVersion}};
    if (!game.metadata.target_labels.empty()) meta["target_labels"] = game.metadata.target_labels;
    return {{"num_targets", game.num_targets}, {"defenders", std::move(defenders)}, {"metadata", std::move(meta)}};
}

// nlohmann throws its own exception types; surface them as validation errors.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ValidationError(std::string(what) + ": " + e.what());
    }
}

inline Game game_from_json(const json& j) {
    return guarded("game", [&] {
        Game game;
        const long long T = j.at("num_targets").get<long long>();
        if (T < 1) throw ValidationError("num_targets must be >= 1");
        game.num_targets = static_cast<std::size_t>(T);
        for (const json& d : j.at("defenders")) {
            Defender def;
            def.preference = PreferenceOrder(targets_from_json(d.at("preference"), game.num_targets, "preference"));
            def.coverage_set = coverage_set_from_json(d.at("coverage_set"));
            game.defenders.push_back(std::move(def));
        }
        if (j.contains("metadata")) {
            const json& m = j.at("metadata");
            game.metadata.label = m.value("label", std::string());
            game.metadata.seed = m.value("seed", std::uint64_t{0});
            if (m.contains("target_labels"))
                game.metadata.target_labels = m.at("target_labels").get<std::vector<std::string>>();
        }
        validate_game(game);
        return game;
    });
}

inline json to_json(const StrategyProfile& p) {
    return {{"coverages", p.coverages}, {"target", p.target + 1}};
}

inline StrategyProfile profile_from_json(const json& j) {
    return guarded("profile", [&] {
        StrategyProfile p;
        p.coverages = j.at("coverages").get<std::vector<CoverageVector>>();
        const long long t = j.at("target").get<long long>();
        if (t < 1) throw ValidationError("profile target must be a 1-based target id");
        p.target = static_cast<Target>(t - 1);
        return p;
    });
}

inline json to_json(const VerificationReport& r) {
    json witnesses = json::array();
    for (const WitnessDeviation& w : r.witness_deviations)
        witnesses.push_back({{"defender", w.defender + 1},
                             {"deviation", w.deviation},
                             {"induced_target", w.induced_target + 1},
                             {"margin", w.margin}});
    return {{"is_nse", r.is_nse()},
            {"feasible", r.feasible},
            {"per_defender_feasible", r.per_defender_feasible},
            {"aic", r.aic},
            {"per_defender_ic", r.per_defender_ic},
            {"witness_deviations", std::move(witnesses)},
            {"tolerances",
             {{"tie_tol", r.tolerances.tie_tol},
              {"strict_margin", r.tolerances.strict_margin},
              {"membership_tol", r.tolerances.membership_tol}}}};
}

inline json to_json(const EquilibriumTarget& e) {
    return {{"target", e.target + 1},
            {"h1", e.unconstrained1 ? json("inf") : json(e.h1)},
            {"h2", e.unconstrained2 ? json("inf") : json(e.h2)},
            {"unconstrained1", e.unconstrained1},
            {"unconstrained2", e.unconstrained2},
            {"efficiency", to_string(e.efficiency)}};
}

inline json to_json(const IntervalSet& set) {
    json out = json::array();
    for (const Interval& iv : set) out.push_back({iv.lo, iv.hi});
    return out;
}

inline json to_json(const CounterexampleCertificate& cert, const Game& game) {
    json targets = json::array();
    for (const TargetAnalysis& ta : cert.targets) {
        json devs = json::array();
        for (const DeviatorAnalysis& da : ta.deviators) {
            json tests = json::array();
            for (const DeviationTest& test : da.tests) {
                json conds = json::array();
                for (const BlockingCondition& c : test.conditions) {
                    json jc = {{"blocker", game.target_name(c.blocker)},
                               {"coefficient", c.coefficient},
                               {"rhs", c.rhs},
                               {"bound", to_string(c.bound)},
                               {"feasible", to_json(c.feasible)}};
                    if (c.threshold) jc["threshold"] = *c.threshold;
                    conds.push_back(std::move(jc));
                }
                tests.push_back({{"schedule", test.schedule + 1},
                                 {"aimed", game.target_name(test.aimed)},
                                 {"conditions", std::move(conds)},
                                 {"blocked", to_json(test.blocked)}});
            }
            devs.push_back({{"deviator", da.deviator + 1},
                            {"mixer", da.mixer + 1},
                            {"tests", std::move(tests)},
                            {"surviving", to_json(da.surviving)}});
        }
        targets.push_back({{"target", game.target_name(ta.target)},
                           {"refuted", ta.refuted},
                           {"deviators", std::move(devs)}});
    }
    return {{"exists_nse", cert.exists_nse}, {"targets", std::move(targets)}};
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

inline Game load_game(const std::string& path) { return game_from_json(read_json_file(path)); }
inline StrategyProfile load_profile(const std::string& path) { return profile_from_json(read_json_file(path)); }

} // namespace nse::io

#pragma once

// Reproducible game generators and named fixture games.
//
// Randomness comes from std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Bounded integers are drawn by rejection sampling on the
// raw 64-bit output rather than std::uniform_int_distribution (whose
// algorithm is implementation-defined), so a (config, seed) pair produces the
// same game on every platform. Bump kGeneratorVersion if the draw order in
// any generator changes.

#include "nse/error.hpp"
#include "nse/game.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace nse {

inline constexpr int kGeneratorVersion = 1;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw ValidationError("Rng::below(0)");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    template <class T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
    }

    std::vector<Target> permutation(std::size_t n) {
        std::vector<Target> p(n);
        std::iota(p.begin(), p.end(), Target{0});
        shuffle(p);
        return p;
    }

private:
    std::mt19937_64 engine_;
};

enum class Family { Rgs, Psg, Pln };

inline const char* to_string(Family f) {
    switch (f) {
    case Family::Rgs: return "rgs";
    case Family::Psg: return "psg";
    case Family::Pln: return "pln";
    }
    return "?";
}

inline Family parse_family(const std::string& name) {
    if (name == "rgs") return Family::Rgs;
    if (name == "psg") return Family::Psg;
    if (name == "pln") return Family::Pln;
    throw ValidationError("unknown generator family '" + name + "' (expected rgs, psg or pln)");
}

struct GeneratorConfig {
    Family family = Family::Rgs;
    std::uint64_t seed = 0;
    std::size_t defenders = 2;
    // RGS
    std::size_t targets = 10;
    std::size_t schedules = 10;
    std::size_t support = 10;
    /// Rearrange each RGS schedule so it is monotone in its owner's order.
    bool monotone = false;
    // PSG
    std::size_t grid = 4;
    std::size_t radius = 2;
    // PLN
    std::size_t layers = 3;
    std::size_t width = 4;
};

inline void validate_config(const GeneratorConfig& c) {
    auto positive = [](std::size_t v, const char* name) {
        if (v == 0) throw ValidationError(std::string(name) + " must be >= 1");
    };
    switch (c.family) {
    case Family::Rgs:
        positive(c.defenders, "defenders");
        positive(c.targets, "targets");
        positive(c.schedules, "schedules");
        positive(c.support, "support");
        if (c.support > c.targets) throw ValidationError("support size cannot exceed the number of targets");
        break;
    case Family::Psg:
        positive(c.grid, "grid");
        positive(c.radius, "radius");
        break;
    case Family::Pln:
        positive(c.defenders, "defenders");
        positive(c.layers, "layers");
        positive(c.width, "width");
        break;
    }
}

/// Rearranges every schedule's entries so the owner's most preferred target
/// gets the smallest value, the next one the next smallest, and so on.
inline Game make_monotone(Game game) {
    for (Defender& d : game.defenders) {
        auto* sched = std::get_if<ExplicitSchedules>(&d.coverage_set);
        if (sched == nullptr) throw PreconditionError("make_monotone needs explicit schedules");
        for (CoverageVector& s : sched->schedules) {
            CoverageVector sorted = s;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t p = 0; p < sorted.size(); ++p) s[d.preference.at_position(p)] = sorted[p];
        }
    }
    return game;
}

inline Game gen_rgs(const GeneratorConfig& c) {
    if (c.family != Family::Rgs) throw ValidationError("gen_rgs called with a non-RGS config");
    validate_config(c);
    Rng rng(c.seed);
    Game game;
    game.num_targets = c.targets;
    for (std::size_t i = 0; i < c.defenders; ++i) {
        Defender d;
        d.preference = PreferenceOrder(rng.permutation(c.targets));
        ExplicitSchedules sched;
        sched.mode = ScheduleMode::Ssas;
        sched.num_targets = c.targets;
        for (std::size_t z = 0; z < c.schedules; ++z) {
            std::vector<Target> pick = rng.permutation(c.targets);
            pick.resize(c.support);
            std::sort(pick.begin(), pick.end());
            CoverageVector s(c.targets, 0.0);
            for (Target t : pick) s[t] = static_cast<double>(rng.below(11));
            sched.schedules.push_back(std::move(s));
        }
        d.coverage_set = std::move(sched);
        game.defenders.push_back(std::move(d));
    }
    game.metadata.label = "rgs T=" + std::to_string(c.targets) + " S=" + std::to_string(c.schedules) +
                          " support=" + std::to_string(c.support) + " n=" + std::to_string(c.defenders) +
                          (c.monotone ? " monotone" : "");
    game.metadata.seed = c.seed;
    if (c.monotone) game = make_monotone(std::move(game));
    return game;
}

/// m x m grid of buildings, two defenders. Each building is one schedule
/// covering every building within L1 distance < r.
inline Game gen_psg(const GeneratorConfig& c) {
    if (c.family != Family::Psg) throw ValidationError("gen_psg called with a non-PSG config");
    validate_config(c);
    Rng rng(c.seed);
    const std::size_t m = c.grid;
    const std::size_t T = m * m;
    ExplicitSchedules sched;
    sched.mode = ScheduleMode::Ssas;
    sched.num_targets = T;
    for (std::size_t b = 0; b < T; ++b) {
        CoverageVector s(T, 0.0);
        const long br = static_cast<long>(b / m), bc = static_cast<long>(b % m);
        for (std::size_t t = 0; t < T; ++t) {
            const long tr = static_cast<long>(t / m), tc = static_cast<long>(t % m);
            if (static_cast<std::size_t>(std::labs(br - tr) + std::labs(bc - tc)) < c.radius) s[t] = 1.0;
        }
        sched.schedules.push_back(std::move(s));
    }
    Game game;
    game.num_targets = T;
    for (std::size_t i = 0; i < 2; ++i) game.defenders.push_back({PreferenceOrder(rng.permutation(T)), sched});
    game.metadata.label = "psg m=" + std::to_string(m) + " r=" + std::to_string(c.radius);
    game.metadata.seed = c.seed;
    return game;
}

inline Game gen_pln(const GeneratorConfig& c) {
    if (c.family != Family::Pln) throw ValidationError("gen_pln called with a non-PLN config");
    validate_config(c);
    Rng rng(c.seed);
    const LayeredNetwork net(c.layers, c.width);
    Game game;
    game.num_targets = net.num_targets();
    for (std::size_t i = 0; i < c.defenders; ++i)
        game.defenders.push_back({PreferenceOrder(rng.permutation(net.num_targets())), FlowPolytope{net}});
    game.metadata.label = "pln L=" + std::to_string(c.layers) + " w=" + std::to_string(c.width) +
                          " n=" + std::to_string(c.defenders);
    game.metadata.seed = c.seed;
    return game;
}

inline Game generate(const GeneratorConfig& c) {
    switch (c.family) {
    case Family::Rgs: return gen_rgs(c);
    case Family::Psg: return gen_psg(c);
    case Family::Pln: return gen_pln(c);
    }
    throw ValidationError("unknown family");
}

// ---------------------------------------------------------------------------
// Fixtures

/// 2x2 grid of targets 11, 12, 21, 22 (indices 0..3). Defender 1 wants the
/// diagonal attacked, defender 2 the off-diagonal; each owns two schedules
/// that are near-complementary rows (resp. columns) perturbed by epsilon.
inline Game example1(double epsilon, double k, ScheduleMode mode) {
    if (!(k >= 1.0) || !(epsilon >= 0.0) || !(k * epsilon < 1.0))
        throw PreconditionError("example1 needs k >= 1, epsilon >= 0 and k * epsilon < 1");
    const double e = epsilon, ke = k * epsilon;
    Game game;
    game.num_targets = 4;
    game.defenders.push_back({PreferenceOrder({3, 0, 1, 2}),
                              ExplicitSchedules{{{1 - e, 1, ke, 0}, {0, ke, 1, 1 - e}}, mode, 4}});
    game.defenders.push_back({PreferenceOrder({2, 1, 0, 3}),
                              ExplicitSchedules{{{1, 0, 1 - e, ke}, {ke, 1 - e, 0, 1}}, mode, 4}});
    game.metadata.label = "example1 epsilon=" + std::to_string(epsilon) + " k=" + std::to_string(k) + " " +
                          to_string(mode);
    game.metadata.target_labels = {"11", "12", "21", "22"};
    return game;
}

/// Three targets, both defenders prefer 1 > 2 > 3 and own the unit vectors.
inline Game identity3() {
    ExplicitSchedules unit{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, ScheduleMode::Ssas, 3};
    Game game;
    game.num_targets = 3;
    game.defenders.push_back({PreferenceOrder::identity(3), unit});
    game.defenders.push_back({PreferenceOrder::identity(3), unit});
    game.metadata.label = "identity3";
    return game;
}

struct FixtureParams {
    double epsilon = 0.0;
    double k = 1.0;
    ScheduleMode mode = ScheduleMode::Ssas;
};

inline Game fixture(const std::string& name, const FixtureParams& params = {}) {
    if (name == "example1") return example1(params.epsilon, params.k, params.mode);
    if (name == "identity3") return identity3();
    throw ValidationError("unknown fixture '" + name + "' (expected example1 or identity3)");
}

} // namespace nse

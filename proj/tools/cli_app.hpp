#pragma once

// Command-line front end. run() is separate from main() so tests can drive
// every subcommand in-process.

#include "nse/nse.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace nse::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kPrecondition = 3,
    kNotVerified = 4,
    kSolver = 5,
};

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Validation: return kParse;
    case ErrorKind::Precondition: return kPrecondition;
    case ErrorKind::Refusal: return kPrecondition;
    case ErrorKind::Solver: return kSolver;
    }
    return kSolver;
}

struct SweepFlags {
    std::string family = "rgs";
    std::vector<std::size_t> defenders{2};
    std::vector<std::size_t> targets{10};
    std::vector<std::size_t> schedules{10};
    std::vector<std::size_t> support;  // empty: full support
    std::vector<std::size_t> grid{4};
    std::vector<std::size_t> radius{2};
    std::vector<std::size_t> layers{3};
    std::vector<std::size_t> width{4};
    std::uint64_t seed = 0;
    bool monotone = false;

    void add_to(CLI::App* cmd, bool lists) {
        const std::string suffix = lists ? " (comma-separated list sweeps)" : "";
        auto opt = [&](const char* name, std::vector<std::size_t>& v, const char* help) {
            auto* o = cmd->add_option(name, v, std::string(help) + suffix)->capture_default_str();
            if (lists) {
                o->delimiter(',');
            } else {
                o->expected(1);
            }
        };
        cmd->add_option("--family", family, "Game family: rgs, psg or pln")->capture_default_str();
        opt("--defenders", defenders, "Number of defenders (rgs, pln)");
        opt("--targets", targets, "Number of targets (rgs)");
        opt("--schedules", schedules, "Schedules per defender (rgs)");
        opt("--support", support, "Schedule support size (rgs; default: all targets)");
        opt("--grid", grid, "Grid side m (psg)");
        opt("--radius", radius, "Checkpoint radius r (psg)");
        opt("--layers", layers, "Network layers L (pln)");
        opt("--width", width, "Network width w (pln)");
        cmd->add_option("--seed", seed, "Base random seed")->capture_default_str();
        cmd->add_flag("--monotone", monotone, "Make RGS schedules monotone in the owner's preference order");
    }

    std::vector<GeneratorConfig> expand() const {
        GeneratorConfig base;
        base.family = parse_family(family);
        base.seed = seed;
        base.monotone = monotone;
        std::vector<GeneratorConfig> out;
        switch (base.family) {
        case Family::Rgs:
            for (std::size_t n : defenders)
                for (std::size_t T : targets)
                    for (std::size_t S : schedules) {
                        const std::vector<std::size_t> sup = support.empty() ? std::vector<std::size_t>{T} : support;
                        for (std::size_t k : sup) {
                            GeneratorConfig c = base;
                            c.defenders = n;
                            c.targets = T;
                            c.schedules = S;
                            c.support = k;
                            out.push_back(c);
                        }
                    }
            break;
        case Family::Psg:
            for (std::size_t m : grid)
                for (std::size_t r : radius) {
                    GeneratorConfig c = base;
                    c.grid = m;
                    c.radius = r;
                    out.push_back(c);
                }
            break;
        case Family::Pln:
            for (std::size_t n : defenders)
                for (std::size_t L : layers)
                    for (std::size_t w : width) {
                        GeneratorConfig c = base;
                        c.defenders = n;
                        c.layers = L;
                        c.width = w;
                        out.push_back(c);
                    }
            break;
        }
        for (const GeneratorConfig& c : out) validate_config(c);
        return out;
    }
};

inline ScheduleMode parse_mode(const std::string& mode) {
    if (mode == "ssas") return ScheduleMode::Ssas;
    if (mode == "clearance") return ScheduleMode::Clearance;
    throw ValidationError("mode must be ssas or clearance, got '" + mode + "'");
}

inline void emit_json(const io::json& j, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << j.dump(2) << '\n';
    } else {
        io::write_json_file(path, j);
    }
}

inline std::string format_vector(const CoverageVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v[k];
    os << ')';
    return os.str();
}

inline void print_report(const Game& game, const VerificationReport& r, std::ostream& out) {
    out << "feasible: " << (r.feasible ? "yes" : "no") << '\n';
    out << "AIC: " << (r.aic ? "yes" : "no") << '\n';
    for (std::size_t i = 0; i < r.per_defender_ic.size(); ++i)
        out << "defender " << i + 1 << " IC: " << (r.per_defender_ic[i] ? "yes" : "no") << '\n';
    for (const WitnessDeviation& w : r.witness_deviations)
        out << "  defender " << w.defender + 1 << " can deviate to " << format_vector(w.deviation)
            << " and induce an attack on " << game.target_name(w.induced_target) << " (margin " << w.margin << ")\n";
    out << "verdict: " << (r.is_nse() ? "NSE" : "not an NSE") << '\n';
}

inline int cmd_generate(const SweepFlags& flags, const std::string& fixture_name, const FixtureParams& fp,
                        const std::string& out_path, std::ostream& out) {
    Game game;
    if (!fixture_name.empty()) {
        game = fixture(fixture_name, fp);
    } else {
        const std::vector<GeneratorConfig> configs = flags.expand();
        if (configs.size() != 1) throw ValidationError("generate takes a single configuration, not a sweep");
        game = generate(configs.front());
    }
    emit_json(io::to_json(game), out_path, out);
    return kOk;
}

inline int cmd_solve(const std::string& game_path, const std::string& algorithm, const std::string& out_path,
                     std::ostream& out) {
    const Game game = io::load_game(game_path);
    const bench::SolverKind solver = bench::parse_solver(algorithm);
    const StrategyProfile profile = bench::solve(game, solver);
    const VerificationReport report = verify_nse(game, profile);

    // Summary goes to stdout unless the profile itself does.
    std::ostream& summary = (out_path.empty() || out_path == "-") ? std::cerr : out;
    summary << "attacked target: " << game.target_name(profile.target) << '\n';
    for (std::size_t i = 0; i < profile.coverages.size(); ++i) {
        double height = 0.0;
        std::size_t covered = 0;
        for (double x : profile.coverages[i])
            if (x > 0) {
                height = std::max(height, x);
                ++covered;
            }
        summary << "defender " << i + 1 << ": height " << height << " on " << covered << " target(s)\n";
    }
    summary << "verification: " << (report.is_nse() ? "verified NSE" : "FAILED") << '\n';
    emit_json(io::to_json(profile), out_path, out);
    return report.is_nse() ? kOk : kNotVerified;
}

inline int cmd_verify(const std::string& game_path, const std::string& profile_path, const std::string& out_path,
                      std::ostream& out) {
    const Game game = io::load_game(game_path);
    const StrategyProfile profile = io::load_profile(profile_path);
    const VerificationReport report = verify_nse(game, profile);
    print_report(game, report, out);
    if (!out_path.empty()) io::write_json_file(out_path, io::to_json(report));
    return report.is_nse() ? kOk : kNotVerified;
}

inline int cmd_enumerate(const std::string& game_path, const std::string& out_path, std::ostream& out) {
    const Game game = io::load_game(game_path);
    const std::vector<EquilibriumTarget> eq = enumerate_equilibrium_targets(game);
    out << std::left << std::setw(8) << "target" << std::setw(14) << "h1" << std::setw(14) << "h2"
        << "efficiency\n";
    for (const EquilibriumTarget& e : eq) {
        auto h = [](double v, bool unconstrained) {
            std::ostringstream os;
            if (unconstrained) {
                os << "inf";
            } else {
                os << v;
            }
            return os.str();
        };
        out << std::left << std::setw(8) << game.target_name(e.target) << std::setw(14) << h(e.h1, e.unconstrained1)
            << std::setw(14) << h(e.h2, e.unconstrained2) << to_string(e.efficiency) << '\n';
    }
    if (!out_path.empty()) {
        io::json arr = io::json::array();
        for (const EquilibriumTarget& e : eq) arr.push_back(io::to_json(e));
        io::write_json_file(out_path, arr);
    }
    return kOk;
}

inline std::ostream& open_or(std::ofstream& file, const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") return fallback;
    file.open(path);
    if (!file) throw ValidationError("cannot write '" + path + "'");
    return file;
}

inline int cmd_bench(const SweepFlags& flags, std::size_t trials, const std::string& algorithm, std::size_t jobs,
                     const std::string& out_path, const std::string& summary_path, std::ostream& out,
                     std::ostream& err) {
    const std::vector<GeneratorConfig> configs = flags.expand();
    const bench::SolverKind solver = bench::parse_solver(algorithm);
    const std::vector<bench::BenchRecord> records = bench::run_bench(configs, trials, solver, jobs);
    for (const bench::BenchRecord& r : records)
        if (!r.ok) err << "trial " << r.trial << " (seed " << r.config.seed << ") failed: " << r.error << '\n';
    std::ofstream rec_file, sum_file;
    if (!out_path.empty()) bench::write_bench_csv(open_or(rec_file, out_path, out), records);
    bench::write_summary_csv(open_or(sum_file, summary_path, out), bench::summarize(configs, records));
    return kOk;
}

inline int cmd_stats(const SweepFlags& flags, std::size_t trials, std::size_t jobs, const std::string& out_path,
                     const std::string& freq_path, std::ostream& out, std::ostream& err) {
    const std::vector<GeneratorConfig> configs = flags.expand();
    const std::vector<bench::RankStats> rows = bench::run_stats(configs, trials, jobs);
    for (const bench::RankStats& r : rows)
        if (!r.ok) err << "trial " << r.trial << " (seed " << r.config.seed << ") failed: " << r.error << '\n';
    std::ofstream rows_file, freq_file;
    bench::write_stats_csv(open_or(rows_file, out_path, out), rows);
    if (!freq_path.empty()) bench::write_frequency_csv(open_or(freq_file, freq_path, out), bench::rank_frequencies(rows));
    return kOk;
}

inline int cmd_counterexample(double epsilon, double k, const std::string& out_path, std::ostream& out) {
    const Game game = example1(epsilon, k, ScheduleMode::Clearance);
    const CounterexampleCertificate cert = certify_two_schedule_game(game);
    out << std::setprecision(6);
    for (const TargetAnalysis& ta : cert.targets) {
        out << "target " << game.target_name(ta.target) << ": " << (ta.refuted ? "refuted" : "not refuted") << '\n';
        for (const DeviatorAnalysis& da : ta.deviators) {
            for (const DeviationTest& test : da.tests) {
                out << "  defender " << da.deviator + 1 << " plays schedule " << test.schedule + 1 << " aiming at "
                    << game.target_name(test.aimed) << "; blocked when defender " << da.mixer + 1
                    << "'s weight w satisfies one of:\n";
                for (const BlockingCondition& c : test.conditions) {
                    out << "    total(" << game.target_name(c.blocker) << ") <= total("
                        << game.target_name(test.aimed) << "): ";
                    if (c.threshold) {
                        out << "w " << to_string(c.bound) << ' ' << *c.threshold;
                    } else {
                        out << to_string(c.bound);
                    }
                    out << "  -> [0,1] part: ";
                    if (c.feasible.empty()) {
                        out << "empty";
                    } else {
                        out << '[' << c.feasible.front().lo << ", " << c.feasible.front().hi << ']';
                    }
                    out << '\n';
                }
            }
            out << "  surviving weights for defender " << da.mixer + 1 << ": ";
            if (da.surviving.empty()) out << "none";
            for (const Interval& iv : da.surviving) out << '[' << iv.lo << ", " << iv.hi << "] ";
            out << '\n';
        }
    }
    out << "exists_nse: " << (cert.exists_nse ? "true" : "false") << '\n';
    if (!out_path.empty()) io::write_json_file(out_path, io::to_json(cert, game));
    return kOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nash-Stackelberg equilibria in multi-defender security games"};
    app.require_subcommand(1);

    SweepFlags gen_flags;
    std::string fixture_name, gen_out, mode = "ssas";
    FixtureParams fp;
    auto* gen = app.add_subcommand("generate", "Write a game instance as JSON");
    gen_flags.add_to(gen, false);
    gen->add_option("--fixture", fixture_name, "Named fixture: example1 or identity3");
    gen->add_option("--epsilon", fp.epsilon, "example1 perturbation")->capture_default_str();
    gen->add_option("--k", fp.k, "example1 scale")->capture_default_str();
    gen->add_option("--mode", mode, "example1 schedule mode: ssas or clearance")->capture_default_str();
    gen->add_option("--out", gen_out, "Output path (default: stdout)");

    std::string game_path, algorithm = "two", solve_out;
    auto* solve_cmd = app.add_subcommand("solve", "Compute an equilibrium and verify it");
    solve_cmd->add_option("--game", game_path, "Game JSON")->required();
    solve_cmd->add_option("--algorithm", algorithm, "two or multi_ms")->capture_default_str();
    solve_cmd->add_option("--out", solve_out, "Profile output path (default: stdout)");

    std::string profile_path, report_out;
    auto* verify_cmd = app.add_subcommand("verify", "Check a profile against the equilibrium conditions");
    verify_cmd->add_option("--game", game_path, "Game JSON")->required();
    verify_cmd->add_option("--profile", profile_path, "Profile JSON")->required();
    verify_cmd->add_option("--out", report_out, "Report JSON output path");

    std::string enum_out;
    auto* enum_cmd = app.add_subcommand("enumerate", "List every equilibrium target with efficiency labels");
    enum_cmd->add_option("--game", game_path, "Game JSON")->required();
    enum_cmd->add_option("--out", enum_out, "JSON output path");

    SweepFlags bench_flags;
    std::size_t trials = 100, jobs = 1;
    std::string bench_out, summary_out, bench_algorithm = "two";
    auto* bench_cmd = app.add_subcommand("bench", "Time the solver over generated games");
    bench_flags.add_to(bench_cmd, true);
    bench_cmd->add_option("--trials", trials, "Trials per configuration")->capture_default_str();
    bench_cmd->add_option("--algorithm", bench_algorithm, "two or multi_ms")->capture_default_str();
    bench_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    bench_cmd->add_option("--out", bench_out, "Per-trial CSV path");
    bench_cmd->add_option("--summary", summary_out, "Summary CSV path (default: stdout)");

    SweepFlags stats_flags;
    std::string stats_out, freq_out;
    auto* stats_cmd = app.add_subcommand("stats", "Rank suboptimality and efficient-target counts");
    stats_flags.add_to(stats_cmd, true);
    stats_cmd->add_option("--trials", trials, "Trials per configuration")->capture_default_str();
    stats_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    stats_cmd->add_option("--out", stats_out, "Per-trial CSV path (default: stdout)");
    stats_cmd->add_option("--freq-out", freq_out, "Rank frequency CSV path");

    double epsilon = 1e-3, k = 100;
    std::string cert_out;
    auto* cex_cmd = app.add_subcommand("counterexample", "Certify (non-)existence for the 2x2 clearance game");
    cex_cmd->add_option("--epsilon", epsilon, "Perturbation epsilon")->capture_default_str();
    cex_cmd->add_option("--k", k, "Scale k")->capture_default_str();
    cex_cmd->add_option("--out", cert_out, "Certificate JSON output path");

    std::vector<std::string> storage{"nse"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            fp.mode = parse_mode(mode);
            return cmd_generate(gen_flags, fixture_name, fp, gen_out, out);
        }
        if (*solve_cmd) return cmd_solve(game_path, algorithm, solve_out, out);
        if (*verify_cmd) return cmd_verify(game_path, profile_path, report_out, out);
        if (*enum_cmd) return cmd_enumerate(game_path, enum_out, out);
        if (*bench_cmd) return cmd_bench(bench_flags, trials, bench_algorithm, jobs, bench_out, summary_out, out, err);
        if (*stats_cmd) return cmd_stats(stats_flags, trials, jobs, stats_out, freq_out, out, err);
        if (*cex_cmd) return cmd_counterexample(epsilon, k, cert_out, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return kUsage;
}

} // namespace nse::cli

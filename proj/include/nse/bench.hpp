#pragma once

// Experiment harness: runtime benchmarks and rank-suboptimality statistics
// over generated game families, with CSV output.

#include "nse/error.hpp"
#include "nse/game.hpp"
#include "nse/generators.hpp"
#include "nse/solver_multi.hpp"
#include "nse/solver_two.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace nse::bench {

enum class SolverKind { Two, MultiMs };

inline const char* to_string(SolverKind s) { return s == SolverKind::Two ? "two" : "multi_ms"; }

inline SolverKind parse_solver(const std::string& name) {
    if (name == "two") return SolverKind::Two;
    if (name == "multi_ms") return SolverKind::MultiMs;
    throw ValidationError("unknown algorithm '" + name + "' (expected two or multi_ms)");
}

inline StrategyProfile solve(const Game& game, SolverKind solver) {
    return solver == SolverKind::Two ? solve_two(game) : solve_multi_ms(game);
}

/// Runs fn(0..count-1) on up to `jobs` threads; results come back in index order.
template <class R>
std::vector<R> run_indexed(std::size_t count, std::size_t jobs, const std::function<R(std::size_t)>& fn) {
    std::vector<R> results(count);
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) results[i] = fn(i);
        });
    for (std::thread& t : workers) t.join();
    return results;
}

struct TrialTask {
    GeneratorConfig config;  // seed already offset for the trial
    std::size_t config_index = 0;
    std::size_t trial = 0;
};

inline std::vector<TrialTask> expand_trials(const std::vector<GeneratorConfig>& configs, std::size_t trials) {
    std::vector<TrialTask> tasks;
    for (std::size_t c = 0; c < configs.size(); ++c)
        for (std::size_t k = 0; k < trials; ++k) {
            TrialTask task{configs[c], c, k};
            task.config.seed = configs[c].seed + k;
            tasks.push_back(task);
        }
    return tasks;
}

struct BenchRecord {
    GeneratorConfig config;
    std::size_t config_index = 0;
    std::size_t trial = 0;
    SolverKind solver = SolverKind::Two;
    double seconds = 0.0;
    bool ok = true;
    std::string error;
};

/// Times one solve per (config, trial). Generation is excluded from timing.
/// Failures are recorded on the row and the run continues.
inline std::vector<BenchRecord> run_bench(const std::vector<GeneratorConfig>& configs, std::size_t trials,
                                          SolverKind solver, std::size_t jobs = 1) {
    const std::vector<TrialTask> tasks = expand_trials(configs, trials);
    return run_indexed<BenchRecord>(tasks.size(), jobs, [&](std::size_t idx) {
        const TrialTask& task = tasks[idx];
        BenchRecord rec{task.config, task.config_index, task.trial, solver, 0.0, true, {}};
        try {
            const Game game = generate(task.config);
            const auto start = std::chrono::steady_clock::now();
            (void)solve(game, solver);
            rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        } catch (const std::exception& e) {
            rec.ok = false;
            rec.error = e.what();
        }
        return rec;
    });
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t count = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr out;
    out.count = xs.size();
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.stderr_ = std::sqrt(ss / static_cast<double>(xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
    }
    return out;
}

struct BenchSummary {
    GeneratorConfig config;
    MeanStderr seconds;
    std::size_t failures = 0;
};

inline std::vector<BenchSummary> summarize(const std::vector<GeneratorConfig>& configs,
                                           const std::vector<BenchRecord>& records) {
    std::vector<BenchSummary> out;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        std::vector<double> xs;
        std::size_t failures = 0;
        for (const BenchRecord& r : records) {
            if (r.config_index != c) continue;
            if (r.ok) {
                xs.push_back(r.seconds);
            } else {
                ++failures;
            }
        }
        out.push_back({configs[c], mean_stderr(xs), failures});
    }
    return out;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit fit;
    fit.slope = sxx > 0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = (sxx > 0 && syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

// ---------------------------------------------------------------------------
// Rank suboptimality

struct RankStats {
    GeneratorConfig config;
    std::size_t config_index = 0;
    std::size_t trial = 0;
    std::size_t num_targets = 0;
    std::size_t equilibrium_targets = 0;
    std::size_t efficient_targets = 0;
    double efficient_ratio = 0.0;
    /// Defender 1's rank of the attacked target over efficient equilibria:
    /// best, arithmetic mean, worst.
    std::size_t optimistic = 0;
    double average = 0.0;
    std::size_t pessimistic = 0;
    bool ok = true;
    std::string error;
};

inline RankStats rank_stats(const Game& game) {
    const std::vector<EquilibriumTarget> eq = enumerate_equilibrium_targets(game);
    RankStats s;
    s.num_targets = game.num_targets;
    s.equilibrium_targets = eq.size();
    std::vector<std::size_t> ranks;
    for (const EquilibriumTarget& e : eq)
        if (e.efficiency == Efficiency::Efficient) ranks.push_back(game.preference(0).rank(e.target));
    // Efficiency closure guarantees this.
    if (ranks.empty()) throw SolverError("no efficient equilibrium target");
    s.efficient_targets = ranks.size();
    s.efficient_ratio = static_cast<double>(ranks.size()) / static_cast<double>(game.num_targets);
    s.optimistic = *std::min_element(ranks.begin(), ranks.end());
    s.pessimistic = *std::max_element(ranks.begin(), ranks.end());
    double sum = 0;
    for (std::size_t r : ranks) sum += static_cast<double>(r);
    s.average = sum / static_cast<double>(ranks.size());
    return s;
}

inline std::vector<RankStats> run_stats(const std::vector<GeneratorConfig>& configs, std::size_t trials,
                                        std::size_t jobs = 1) {
    const std::vector<TrialTask> tasks = expand_trials(configs, trials);
    return run_indexed<RankStats>(tasks.size(), jobs, [&](std::size_t idx) {
        const TrialTask& task = tasks[idx];
        RankStats s;
        try {
            s = rank_stats(generate(task.config));
        } catch (const std::exception& e) {
            s.ok = false;
            s.error = e.what();
        }
        s.config = task.config;
        s.config_index = task.config_index;
        s.trial = task.trial;
        return s;
    });
}

/// Frequency of each rank value per convention, over successful rows.
struct RankFrequencies {
    std::map<double, std::size_t> optimistic, average, pessimistic;
};

inline RankFrequencies rank_frequencies(const std::vector<RankStats>& rows) {
    RankFrequencies f;
    for (const RankStats& r : rows) {
        if (!r.ok) continue;
        ++f.optimistic[static_cast<double>(r.optimistic)];
        ++f.average[r.average];
        ++f.pessimistic[static_cast<double>(r.pessimistic)];
    }
    return f;
}

// ---------------------------------------------------------------------------
// CSV

inline void write_config_header(std::ostream& os) { os << "family,defenders,targets,schedules,support,monotone,grid,radius,layers,width,seed"; }

inline void write_config(std::ostream& os, const GeneratorConfig& c) {
    os << to_string(c.family) << ',';
    switch (c.family) {
    case Family::Rgs:
        os << c.defenders << ',' << c.targets << ',' << c.schedules << ',' << c.support << ','
           << (c.monotone ? 1 : 0) << ",,,,,";
        break;
    case Family::Psg:
        os << "2," << c.grid * c.grid << ",,,0," << c.grid << ',' << c.radius << ",,,";
        break;
    case Family::Pln:
        os << c.defenders << ',' << c.layers * c.width << ",,,0,,," << c.layers << ',' << c.width << ',';
        break;
    }
    os << c.seed;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
    write_config_header(os);
    os << ",solver,trial,seconds,status\n";
    for (const BenchRecord& r : records) {
        write_config(os, r.config);
        os << ',' << to_string(r.solver) << ',' << r.trial << ',' << r.seconds << ','
           << (r.ok ? "ok" : csv_escape("failed: " + r.error)) << '\n';
    }
}

inline void write_summary_csv(std::ostream& os, const std::vector<BenchSummary>& rows) {
    write_config_header(os);
    os << ",trials,failures,mean_seconds,stderr_seconds\n";
    for (const BenchSummary& s : rows) {
        write_config(os, s.config);
        os << ',' << s.seconds.count + s.failures << ',' << s.failures << ',' << s.seconds.mean << ','
           << s.seconds.stderr_ << '\n';
    }
}

inline void write_stats_csv(std::ostream& os, const std::vector<RankStats>& rows) {
    write_config_header(os);
    os << ",trial,equilibrium_targets,efficient_targets,efficient_ratio,rank_optimistic,rank_average,"
          "rank_pessimistic,status\n";
    for (const RankStats& r : rows) {
        write_config(os, r.config);
        os << ',' << r.trial << ',';
        if (r.ok) {
            os << r.equilibrium_targets << ',' << r.efficient_targets << ',' << r.efficient_ratio << ','
               << r.optimistic << ',' << r.average << ',' << r.pessimistic << ",ok\n";
        } else {
            os << ",,,,,," << csv_escape("failed: " + r.error) << '\n';
        }
    }
}

inline void write_frequency_csv(std::ostream& os, const RankFrequencies& f) {
    os << "convention,rank,count\n";
    auto dump = [&](const char* name, const std::map<double, std::size_t>& m) {
        for (const auto& [rank, count] : m) os << name << ',' << rank << ',' << count << '\n';
    };
    dump("optimistic", f.optimistic);
    dump("average", f.average);
    dump("pessimistic", f.pessimistic);
}

} // namespace nse::bench

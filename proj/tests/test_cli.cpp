#include "cli_app.hpp"
#include "helpers.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = nse::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const char* base = std::getenv("NSE_TEST_TMP");
        dir_ = fs::path(base ? base : fs::temp_directory_path().string()) /
               ("cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string slurp(const std::string& name) const {
        std::ifstream in(path(name));
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, GenerateSolveVerifyRoundTrip) {
    ASSERT_EQ(cli({"generate", "--fixture", "example1", "--epsilon", "0", "--k", "1", "--out", path("g.json")}).code, 0);
    const CliResult solve = cli({"solve", "--game", path("g.json"), "--out", path("p.json")});
    EXPECT_EQ(solve.code, 0) << solve.err;
    EXPECT_NE(solve.out.find("attacked target: 11"), std::string::npos);
    EXPECT_NE(solve.out.find("verified NSE"), std::string::npos);
    const CliResult verify = cli({"verify", "--game", path("g.json"), "--profile", path("p.json"), "--out", path("r.json")});
    EXPECT_EQ(verify.code, 0);
    EXPECT_NE(slurp("r.json").find("\"is_nse\": true"), std::string::npos);
}

TEST_F(Cli, SolveIdentity) {
    ASSERT_EQ(cli({"generate", "--fixture", "identity3", "--out", path("g.json")}).code, 0);
    const CliResult solve = cli({"solve", "--game", path("g.json"), "--out", path("p.json")});
    EXPECT_EQ(solve.code, 0);
    EXPECT_NE(solve.out.find("attacked target: 1"), std::string::npos);
    const auto p = nse::io::load_profile(path("p.json"));
    EXPECT_EQ(p.coverages, (std::vector<nse::CoverageVector>{{0, 0, 0}, {0, 0, 0}}));
}

TEST_F(Cli, SolveClearanceIsPreconditionError) {
    ASSERT_EQ(cli({"generate", "--fixture", "example1", "--epsilon", "1e-3", "--k", "100", "--mode", "clearance",
                   "--out", path("g.json")})
                  .code,
              0);
    const CliResult solve = cli({"solve", "--game", path("g.json")});
    EXPECT_EQ(solve.code, 3);
    EXPECT_NE(solve.err.find("error:"), std::string::npos);
}

TEST_F(Cli, SolveMultiRefusesNonMonotone) {
    ASSERT_EQ(cli({"generate", "--fixture", "identity3", "--out", path("g.json")}).code, 0);
    EXPECT_EQ(cli({"solve", "--game", path("g.json"), "--algorithm", "multi_ms"}).code, 3);
}

TEST_F(Cli, VerifyFailures) {
    ASSERT_EQ(cli({"generate", "--fixture", "example1", "--out", path("g.json")}).code, 0);
    write("moved.json", R"({"coverages": [[0,0.5,0.5,0],[0,0,0,1]], "target": 2})");
    const CliResult r = cli({"verify", "--game", path("g.json"), "--profile", path("moved.json")});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.out.find("AIC: no"), std::string::npos);
    write("bad.json", "{not json");
    EXPECT_EQ(cli({"verify", "--game", path("g.json"), "--profile", path("bad.json")}).code, 2);
    write("short.json", R"({"coverages": [[0,0.5,0.5,0]], "target": 1})");
    EXPECT_EQ(cli({"verify", "--game", path("g.json"), "--profile", path("short.json")}).code, 2);
}

TEST_F(Cli, Enumerate) {
    ASSERT_EQ(cli({"generate", "--fixture", "identity3", "--out", path("g.json")}).code, 0);
    const CliResult r = cli({"enumerate", "--game", path("g.json"), "--out", path("eq.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("inefficient"), std::string::npos);
    const auto j = nse::io::read_json_file(path("eq.json"));
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0]["efficiency"], "efficient");
    EXPECT_EQ(j[1]["efficiency"], "inefficient");
}

TEST_F(Cli, Counterexample) {
    const CliResult r = cli({"counterexample", "--epsilon", "1e-3", "--k", "100", "--out", path("c.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("exists_nse: false"), std::string::npos);
    EXPECT_NE(r.out.find("-9.0909"), std::string::npos);
    EXPECT_NE(r.out.find("0.526"), std::string::npos);
    EXPECT_NE(r.out.find("10.0909"), std::string::npos);
    EXPECT_NE(r.out.find("0.4739"), std::string::npos);
    EXPECT_FALSE(nse::io::read_json_file(path("c.json"))["exists_nse"].get<bool>());
    EXPECT_NE(cli({"counterexample", "--epsilon", "0"}).out.find("exists_nse: true"), std::string::npos);
    EXPECT_EQ(cli({"counterexample", "--epsilon", "0.5", "--k", "10"}).code, 3);
}

TEST_F(Cli, GenerateFamilies) {
    EXPECT_EQ(cli({"generate", "--family", "psg", "--grid", "3", "--radius", "2", "--out", path("psg.json")}).code, 0);
    EXPECT_EQ(nse::io::load_game(path("psg.json")).num_targets, 9u);
    EXPECT_EQ(cli({"generate", "--family", "pln", "--layers", "2", "--width", "3", "--out", path("pln.json")}).code, 0);
    EXPECT_EQ(nse::io::load_game(path("pln.json")).num_targets, 6u);
    const CliResult a = cli({"generate", "--family", "rgs", "--targets", "5", "--schedules", "3", "--support", "2",
                       "--seed", "42"});
    const CliResult b = cli({"generate", "--family", "rgs", "--targets", "5", "--schedules", "3", "--support", "2",
                       "--seed", "42"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(cli({"generate", "--family", "hex"}).code, 2);
    EXPECT_EQ(cli({"generate", "--family", "rgs", "--targets", "3", "--support", "5"}).code, 2);
}

TEST_F(Cli, BenchAndStats) {
    const CliResult bench = cli({"bench", "--targets", "5,6", "--schedules", "3", "--trials", "3", "--jobs", "2", "--out",
                           path("bench.csv")});
    EXPECT_EQ(bench.code, 0) << bench.err;
    EXPECT_NE(bench.out.find("mean_seconds"), std::string::npos);
    std::istringstream rows(slurp("bench.csv"));
    std::string line;
    int count = 0;
    while (std::getline(rows, line)) ++count;
    EXPECT_EQ(count, 1 + 2 * 3);

    const CliResult stats = cli({"stats", "--targets", "6", "--schedules", "3", "--trials", "4", "--freq-out",
                           path("freq.csv")});
    EXPECT_EQ(stats.code, 0);
    EXPECT_NE(stats.out.find("rank_optimistic"), std::string::npos);
    EXPECT_NE(slurp("freq.csv").find("pessimistic,"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, 1);
    EXPECT_EQ(cli({"frobnicate"}).code, 1);
    EXPECT_EQ(cli({"solve"}).code, 1);
    EXPECT_EQ(cli({"--help"}).code, 0);
    EXPECT_EQ(cli({"solve", "--game", path("missing.json")}).code, 2);
}

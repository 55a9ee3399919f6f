#include "tailsim/cli.hpp"
#include "tailsim/scenarios.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace tailsim;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

// Runs the installed executable; stderr is folded into the captured text.
Result cli(const std::string& args) {
    const std::string cmd = std::string(TAILSIM_CLI_PATH) + " " + args + " 2>&1";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

class CliTest : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("tailsim_cli_") + info->name());
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    }
};

}  // namespace

TEST_F(CliTest, RunWritesArtifacts) {
    const Result r = cli("run --scenario fig8 --variant sea --out " + (dir / "o").string());
    ASSERT_EQ(r.code, 0) << r.out;
    for (const char* f : {"trace.csv", "stats.txt", "manifest.txt"}) {
        EXPECT_TRUE(fs::exists(dir / "o" / f)) << f;
    }
    EXPECT_NE(r.out.find("median_yaw_err_deg"), std::string::npos);
    const std::string manifest = slurp(dir / "o" / "manifest.txt");
    EXPECT_NE(manifest.find("variant = sea"), std::string::npos);
    EXPECT_NE(manifest.find("seed = 1"), std::string::npos);
}

TEST_F(CliTest, UnknownScenario) {
    const Result r = cli("run --scenario loop --out " + dir.string());
    EXPECT_EQ(r.code, kExitConfigError);
    EXPECT_NE(r.out.find("loop"), std::string::npos);
}

TEST_F(CliTest, BadConfigFile) {
    EXPECT_EQ(cli("run --config " + (dir / "missing.ini").string()).code, kExitConfigError);
    const std::string bad = write("bad.ini", "[vehicle]\nmass = -1\n");
    const Result r = cli("print-config --config " + bad);
    EXPECT_EQ(r.code, kExitConfigError);
    EXPECT_NE(r.out.find("mass"), std::string::npos);
    EXPECT_EQ(cli("run --variant both --out " + dir.string()).code, kExitConfigError);
}

TEST_F(CliTest, NonFiniteStateIsAFault) {
    const std::string ini = write("nan.ini", "[control]\nvel_p_x = 1e308\nvel_p_y = 1e308\n");
    const Result r = cli("run --config " + ini + " --scenario fig8 --out " + dir.string());
    EXPECT_EQ(r.code, kExitSimulationFault);
    EXPECT_NE(r.out.find("tick"), std::string::npos);
}

TEST_F(CliTest, CompareFig8) {
    const Result r = cli("compare --scenario fig8 --out " + dir.string());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("median_yaw_err_deg"), std::string::npos);
    EXPECT_NE(r.out.find("19.5 (SEA) / 27.1 (CEA)"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir / "sea" / "trace.csv"));
    EXPECT_TRUE(fs::exists(dir / "cea" / "trace.csv"));
    EXPECT_EQ(slurp(dir / "compare.txt"), r.out);
}

TEST_F(CliTest, CompareTakeoffShowsFlownValues) {
    const Result r = cli("compare --scenario takeoff --out " + dir.string());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("8.6"), std::string::npos);
    EXPECT_NE(r.out.find("2.1"), std::string::npos);
    EXPECT_NE(r.out.find("1.4"), std::string::npos);
}

TEST_F(CliTest, Deterministic) {
    const std::string a = (dir / "a").string(), b = (dir / "b").string();
    ASSERT_EQ(cli("run --scenario hover_gust --variant cea --seed 5 --out " + a).code, 0);
    ASSERT_EQ(cli("run --scenario hover_gust --variant cea --seed 5 --out " + b).code, 0);
    EXPECT_EQ(slurp(dir / "a" / "trace.csv"), slurp(dir / "b" / "trace.csv"));
    EXPECT_EQ(slurp(dir / "a" / "stats.txt"), slurp(dir / "b" / "stats.txt"));
}

TEST_F(CliTest, SeedReachesManifest) {
    ASSERT_EQ(cli("run --scenario transition --seed 42 --out " + dir.string()).code, 0);
    EXPECT_NE(slurp(dir / "manifest.txt").find("seed = 42"), std::string::npos);
}

TEST_F(CliTest, SelftestPasses) {
    const Result r = cli("selftest");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("selftest passed"), std::string::npos);
}

TEST_F(CliTest, SelftestCatchesHalfTurnPhaseError) {
    const double g = wrap_pi(VehicleParams{}.gamma_phys + kPi);
    const std::string ini = write("g.ini", "[vehicle]\ngamma0 = " + std::to_string(g) + "\n");
    const Result r = cli("selftest --config " + ini);
    EXPECT_EQ(r.code, kExitSelftestFailed);
    EXPECT_NE(r.out.find("FAIL cross_fidelity"), std::string::npos);
}

TEST_F(CliTest, SelftestJson) {
    const Result r = cli("selftest --json");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.at("passed").get<bool>());
    EXPECT_EQ(j.at("checks").size(), 8u);
    for (const auto& c : j.at("checks")) {
        EXPECT_TRUE(c.contains("name"));
        EXPECT_TRUE(c.at("passed").get<bool>()) << c.at("name");
    }
}

TEST_F(CliTest, PrintConfigRoundTrips) {
    const Result r = cli("print-config --variant cea --scenario step_y");
    ASSERT_EQ(r.code, 0);
    const std::string path = write("full.ini", r.out);
    const Config c = load_config_file(path);
    EXPECT_EQ(c.sim.variant, Variant::Cea);
    EXPECT_EQ(c.scenario.name, "step_y");
    EXPECT_EQ(cli("print-config --config " + path).out, r.out);
}

TEST(CompareTable, HasPairedColumns) {
    ScenarioReport sea, cea;
    sea.scenario = cea.scenario = "fig8";
    sea.metrics["median_yaw_err_deg"] = 10.0;
    cea.metrics["median_yaw_err_deg"] = 15.0;
    sea.flown["median_yaw_err_deg"] = "19.5 (SEA) / 27.1 (CEA)";
    const std::string t = compare_table(sea, cea);
    EXPECT_NE(t.find("metric"), std::string::npos);
    EXPECT_NE(t.find("1.5"), std::string::npos);
    EXPECT_NE(t.find("27.1"), std::string::npos);
}

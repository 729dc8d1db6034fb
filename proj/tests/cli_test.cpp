#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "disco/cli.hpp"
#include "disco/witness.hpp"
#include "support.hpp"

using namespace disco;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("disco-cli-" + std::to_string(::getpid()) + "-" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int check(const std::string& game, const std::string& state, const std::string& gamma, const std::string& formula) {
        cli::CheckOptions o{fixture::corpus(game), state, gamma, formula, {}, {}, {}};
        return cli::cmd_check(o, out, err);
    }

    fs::path dir_;
    std::ostringstream out, err;
};

} // namespace

TEST_F(Cli, Validate) {
    EXPECT_EQ(cli::cmd_validate(fixture::corpus("fig1.game"), out, err), 0);
    EXPECT_EQ(out.str().rfind("ok: 4 states, ", 0), 0U) << out.str();
    EXPECT_EQ(cli::cmd_validate(path("missing.game"), out, err), 3);
    std::string bad = write("bad.game", R"({"agents": ["a"], "states": ["w"], "actions": ["eps"], "epsilon": "eps",
      "transitions": [{"from": "w", "profile": {"a": "eps"}, "costs": {"a": "1"}, "to": "w"}], "valuation": {}})");
    EXPECT_EQ(cli::cmd_validate(bad, out, err), 3);
    EXPECT_NE(err.str().find("E-EPSILON-COST"), std::string::npos) << err.str();
}

TEST_F(Cli, CheckVerdictsAndCodes) {
    EXPECT_EQ(check("fig3.game", "w1", "2/3", "[a:8/9, b:8/9, d:0] p"), 0);
    EXPECT_EQ(out.str().rfind("TRUE ", 0), 0U);
    out.str("");
    EXPECT_EQ(check("fig2.game", "w", "1/2", "[a:199] p"), 1);
    EXPECT_EQ(out.str().rfind("FALSE ", 0), 0U);
    EXPECT_EQ(check("fig2.game", "w", "1", "[a:199] p"), 3);
    EXPECT_EQ(check("fig2.game", "w", "0.5", "[a:199] p"), 3);
    EXPECT_EQ(check("fig2.game", "nowhere", "1/2", "p"), 3);
    EXPECT_EQ(check("fig2.game", "w", "1/2", "[a:1"), 3);
}

TEST_F(Cli, CheckUnknownUnderTightLimits) {
    cli::CheckOptions o{fixture::corpus("fig1.game"), "w", "1/2", "[a:2] p", 1, {}, {}};
    EXPECT_EQ(cli::cmd_check(o, out, err), 2);
    EXPECT_EQ(out.str().rfind("UNKNOWN ", 0), 0U);
    ::setenv("DISCO_MAX_GOALS", "1", 1);
    EXPECT_EQ(check("fig2.game", "w", "1/2", "[a:4/3, b:2/3] p"), 2);
    ::unsetenv("DISCO_MAX_GOALS");
}

TEST_F(Cli, CheckWithOracle) {
    cli::CheckOptions o{fixture::corpus("fig1.game"), "w", "1/2", "[a:4] p", {}, {}, 1};
    EXPECT_EQ(cli::cmd_check(o, out, err), 0);
    o.formula = "[a:2] p";
    EXPECT_EQ(cli::cmd_check(o, out, err), 2);
    o.formula = "[a:1] p";
    o.oracle_horizon = 3;
    EXPECT_EQ(cli::cmd_check(o, out, err), 1);
}

TEST_F(Cli, WitnessReplaysThroughSimulate) {
    cli::CheckOptions o{fixture::corpus("fig2.game"), "w", "1/2", "[a:4/3, b:2/3] p", {}, path("w.strategy"), {}};
    ASSERT_EQ(cli::cmd_check(o, out, err), 0);
    Game g = load_game(fixture::corpus("fig2.game"));
    StrategyAutomaton s = load_strategy(path("w.strategy"));
    AuditResult a = audit_witness(g, g.state_id("w"), s, {{"a", Rational(4, 3)}, {"b", Rational(2, 3)}},
                                  parse_formula("p"), Rational(1, 2), 64);
    EXPECT_TRUE(a.ok) << a.violation;
    cli::SimulateOptions sim{fixture::corpus("fig2.game"), path("w.strategy"), "w", 6, "1/2"};
    out.str("");
    EXPECT_EQ(cli::cmd_simulate(sim, out, err), 0);
}

TEST_F(Cli, Simulate) {
    cli::SimulateOptions sim{fixture::corpus("fig2.game"), fixture::corpus("fig2_alternating.strategy"), "w", 4, "1/2"};
    EXPECT_EQ(cli::cmd_simulate(sim, out, err), 0);
    std::string text = out.str();
    EXPECT_NE(text.find("\na: 5/4, b: 5/8\n"), std::string::npos) << text;

    out.str("");
    sim.depth = 0;
    EXPECT_EQ(cli::cmd_simulate(sim, out, err), 0);
    EXPECT_EQ(out.str(), "w\na: 0, b: 0\n");

    sim.game = fixture::corpus("fig1.game");
    EXPECT_EQ(cli::cmd_simulate(sim, out, err), 3);
    sim.game = fixture::corpus("fig2.game");
    sim.strategy = write("broken.strategy", "{\"coalition\": [\"a\"]}");
    EXPECT_EQ(cli::cmd_simulate(sim, out, err), 3);
}

TEST_F(Cli, Prove) {
    std::ostringstream script;
    ASSERT_EQ(cli::cmd_gen_supermono("[a:1] p", "[a:2, b:5] p", script, err), 0);
    EXPECT_EQ(cli::cmd_prove(write("mono.proof", script.str()), out, err), 0);
    EXPECT_EQ(out.str(), "VALID\n");
    out.str("");
    EXPECT_EQ(cli::cmd_prove(write("nec.proof", "hyp: p\n1: p ; hyp 1\n2: [a:1] p ; nec [a:1] 1\n"), out, err), 1);
    EXPECT_NE(out.str().find("line 2: E-NEC-SCOPE"), std::string::npos) << out.str();
    EXPECT_EQ(cli::cmd_prove(write("empty.proof", ""), out, err), 3);
    EXPECT_EQ(cli::cmd_prove(path("absent.proof"), out, err), 3);
    EXPECT_EQ(cli::cmd_gen_supermono("[a:2] p", "[a:1] p", out, err), 3);
}

TEST_F(Cli, Reproduce) {
    EXPECT_EQ(cli::cmd_reproduce(DISCO_CORPUS_DIR, std::nullopt, out, err), 0) << out.str();
    EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
    out.str("");
    EXPECT_EQ(cli::cmd_reproduce(DISCO_CORPUS_DIR, std::string("2/3"), out, err), 0) << out.str();
}

TEST_F(Cli, ReproduceNoticesTampering) {
    for (const char* name : {"fig1.game", "fig3.game", "fig2_alternating.strategy"})
        fs::copy_file(fixture::corpus(name), dir_ / name);
    // fig2 with a's loop made cheaper: the minimal budget claims stop holding.
    std::ifstream in(fixture::corpus("fig2.game"));
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto at = text.find("\"100\"");
    ASSERT_NE(at, std::string::npos);
    text.replace(at, 5, "\"99\"");
    write("fig2.game", text);
    EXPECT_EQ(cli::cmd_reproduce(dir_.string(), std::nullopt, out, err), 1);
    EXPECT_NE(out.str().find("FAIL"), std::string::npos);

    write("fig2.game", "{ not json");
    EXPECT_EQ(cli::cmd_reproduce(dir_.string(), std::nullopt, out, err), 3);
}

TEST_F(Cli, RationalsInLowestTerms) {
    cli::SimulateOptions sim{fixture::corpus("fig2.game"), fixture::corpus("fig2_alternating.strategy"), "w", 2, "2/4"};
    EXPECT_EQ(cli::cmd_simulate(sim, out, err), 0);
    EXPECT_NE(out.str().find("a: 1, b: 1/2"), std::string::npos) << out.str();
}

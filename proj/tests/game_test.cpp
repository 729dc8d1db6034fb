#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "disco/game.hpp"
#include "support.hpp"

using namespace disco;
using nlohmann::json;

namespace {

// Two agents, one state; a pays 1 for x, and every profile loops.
json tiny() {
    return json::parse(R"({
      "agents": ["a", "b"], "states": ["w"], "actions": ["eps", "x"], "epsilon": "eps",
      "transitions": [
        {"from": "w", "profile": {"a": "*", "b": "*"}, "to": "w"},
        {"from": "w", "profile": {"a": "x"}, "costs": {"a": "1"}, "to": "w"}
      ],
      "valuation": {"p": ["w"]}
    })");
}

std::string validation_code(const json& j) {
    try {
        validate_game(j);
    } catch (const Error& e) {
        return e.code();
    }
    return "none";
}

} // namespace

TEST(Validate, Corpus) {
    for (const char* name : {"fig1.game", "fig2.game", "fig3.game"}) {
        Game g = load_game(fixture::corpus(name));
        EXPECT_GT(g.state_count(), 0U) << name;
    }
    Game g = load_game(fixture::corpus("fig1.game"));
    EXPECT_EQ(g.state_count(), 4U);
    EXPECT_EQ(g.terminal(), 4U);
    EXPECT_EQ(g.state_name(g.terminal()), "#t");
}

TEST(Validate, EpsilonMustBeFree) {
    json j = tiny();
    j["transitions"].push_back({{"from", "w"}, {"profile", {{"a", "eps"}}}, {"costs", {{"a", "1"}}}, {"to", "w"}});
    EXPECT_EQ(validation_code(j), "E-EPSILON-COST");
}

TEST(Validate, SerialityReportsProfile) {
    json j = tiny();
    j["transitions"] = json::array({{{"from", "w"}, {"profile", {{"a", "x"}}}, {"costs", {{"a", "1"}}}, {"to", "w"}}});
    try {
        validate_game(j);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "E-SERIAL");
        EXPECT_NE(std::string(e.what()).find("a=eps,b=eps"), std::string::npos) << e.what();
    }
}

TEST(Validate, BadReferences) {
    json j = tiny();
    j["transitions"].push_back({{"from", "nowhere"}, {"profile", json::object()}, {"to", "w"}});
    EXPECT_EQ(validation_code(j), "E-BAD-REF");
    j = tiny();
    j["transitions"].push_back({{"from", "w"}, {"profile", {{"c", "x"}}}, {"to", "w"}});
    EXPECT_EQ(validation_code(j), "E-BAD-REF");
    j = tiny();
    j["transitions"].push_back({{"from", "w"}, {"profile", {{"a", "jump"}}}, {"to", "w"}});
    EXPECT_EQ(validation_code(j), "E-BAD-REF");
    j = tiny();
    j["valuation"]["q"] = {"#t"};
    EXPECT_NE(validation_code(j), "none");
}

TEST(Validate, NegativeCost) {
    json j = tiny();
    j["transitions"][1]["costs"]["a"] = "-1";
    EXPECT_EQ(validation_code(j), "E-NEG-COST");
}

TEST(Validate, MostSpecificWins) {
    Game g = validate_game(tiny());
    auto xa = successors(g, "w", {{"a", "x"}, {"b", "eps"}});
    ASSERT_EQ(xa.size(), 1U);
    EXPECT_EQ(xa[0].costs, (CostVector{1, 0}));
    auto free = successors(g, "w", {{"a", "eps"}, {"b", "x"}});
    ASSERT_EQ(free.size(), 1U);
    EXPECT_EQ(free[0].costs, (CostVector{0, 0}));
}

TEST(Validate, ReorderingDoesNotMatter) {
    fixture::Rng rng(3);
    for (int i = 0; i < 30; ++i) {
        json j = fixture::random_game_json(rng, {});
        Game g = validate_game(j);
        std::vector<json> ts(j["transitions"].begin(), j["transitions"].end());
        std::shuffle(ts.begin(), ts.end(), rng);
        j["transitions"] = ts;
        Game h = validate_game(j);
        ASSERT_EQ(g.state_count(), h.state_count());
        for (StateId s = 0; s < g.state_count(); ++s)
            for (std::size_t p = 0; p < g.profile_count(); ++p) EXPECT_EQ(g.outcomes(s, p), h.outcomes(s, p));
    }
}

TEST(Successors, Fig2) {
    Game g = load_game(fixture::corpus("fig2.game"));
    auto loop = successors(g, "w", {{"a", "loop"}, {"b", "eps"}});
    ASSERT_EQ(loop.size(), 1U);
    EXPECT_EQ(loop[0].costs, (CostVector{100, 0}));
    EXPECT_EQ(g.state_name(loop[0].to), "w");
    auto refuse = successors(g, "w", {{"a", "eps"}, {"b", "eps"}});
    ASSERT_EQ(refuse.size(), 1U);
    EXPECT_EQ(refuse[0].costs, (CostVector{0, 0}));
    EXPECT_EQ(g.state_name(refuse[0].to), "s");
    EXPECT_THROW(successors(g, "nope", {{"a", "eps"}, {"b", "eps"}}), Error);
    EXPECT_THROW(successors(g, "w", {{"a", "fly"}, {"b", "eps"}}), Error);
}

TEST(Successors, SerialOnCorpus) {
    for (const char* name : {"fig1.game", "fig2.game", "fig3.game"}) {
        Game g = load_game(fixture::corpus(name));
        for (StateId s = 0; s < g.state_count(); ++s)
            for (std::size_t p = 0; p < g.profile_count(); ++p) EXPECT_FALSE(g.outcomes(s, p).empty());
    }
}

TEST(Play, Validity) {
    Game g = load_game(fixture::corpus("fig1.game"));
    StateId w = g.state_id("w"), u = g.state_id("u"), s = g.state_id("s");
    ActionId left = g.action_id("left"), right = g.action_id("right");
    EXPECT_TRUE(is_play(g, Play{{w}, {}, {}}));
    EXPECT_TRUE(is_play(g, Play{{w, u}, {{left}}, {{2}}}));
    EXPECT_FALSE(is_play(g, Play{{w, u}, {{left}}, {{1}}}));
    EXPECT_FALSE(is_play(g, Play{{w, s}, {{left}}, {{2}}}));
    EXPECT_TRUE(is_play(g, Play{{s, g.terminal()}, {{right}}, {{0}}}));
    EXPECT_FALSE(is_play(g, Play{{s, g.terminal(), s}, {{right}, {right}}, {{0}, {0}}}));
}

TEST(Play, DiscountedCost) {
    EXPECT_EQ(discounted_cost(Play{{0}, {}, {}}, Rational(1, 2), 1), (CostVector{0}));
    EXPECT_EQ(discounted_cost(Play{{0, 0}, {{1}}, {{2}}}, Rational(1, 3), 1), (CostVector{2}));
    EXPECT_EQ(discounted_cost(Play{{0, 0, 0}, {{1}, {1}}, {{2}, {2}}}, Rational(1, 2), 1), (CostVector{3}));
    EXPECT_THROW(discounted_cost(Play{{0}, {}, {}}, Rational(1), 1), Error);
}

TEST(Simulate, AlternatingStrategy) {
    Game g = load_game(fixture::corpus("fig2.game"));
    StrategyAutomaton alt = load_strategy(fixture::corpus("fig2_alternating.strategy"));
    Play play = simulate(g, alt, AdversaryPolicy::lexicographic(), 4, g.state_id("w"));
    std::vector<std::string> names;
    for (StateId s : play.states) names.push_back(g.state_name(s));
    EXPECT_EQ(names, (std::vector<std::string>{"w", "u", "w", "u", "w"}));
    EXPECT_EQ(discounted_cost(g, play, Rational(1, 2)), (CostVector{Rational(5, 4), Rational(5, 8)}));
    EXPECT_TRUE(is_play(g, play));
    EXPECT_TRUE(play_satisfies(g, play, alt));

    Play none = simulate(g, alt, AdversaryPolicy::lexicographic(), 0, g.state_id("w"));
    EXPECT_EQ(none.states.size(), 1U);
    EXPECT_EQ(discounted_cost(g, none, Rational(1, 2)), (CostVector{0, 0}));
}

TEST(Simulate, AdversaryTakesSmallestOutcome) {
    json j = tiny();
    j["states"] = {"w", "v"};
    j["transitions"] = json::array({{{"from", "w"}, {"profile", json::object()}, {"to", "w"}},
                                    {{"from", "w"}, {"profile", json::object()}, {"to", "v"}},
                                    {{"from", "v"}, {"profile", json::object()}, {"to", "v"}}});
    Game g = validate_game(j);
    StrategyAutomaton idle{{}, {"m"}, "m", {}, {{"m|*|*", "m"}}};
    Play play = simulate(g, idle, AdversaryPolicy::lexicographic(), 3, g.state_id("w"));
    // "v" sorts before "w".
    EXPECT_EQ(play.states, (std::vector<StateId>{0, 1, 1, 1}));
}

TEST(Strategy, PlaySatisfies) {
    Game g = load_game(fixture::corpus("fig2.game"));
    StrategyAutomaton alt = load_strategy(fixture::corpus("fig2_alternating.strategy"));
    StateId w = g.state_id("w"), u = g.state_id("u");
    ActionId eps = g.action_id("eps"), left = g.action_id("left");
    Play follows{{w, u}, {{left, eps}}, {{1, 0}}};
    Play deviates{{w, u}, {{g.action_id("right"), eps}}, {{1, 0}}};
    ASSERT_TRUE(is_play(g, follows));
    EXPECT_TRUE(play_satisfies(g, follows, alt));
    EXPECT_FALSE(play_satisfies(g, deviates, alt));
    EXPECT_TRUE(play_satisfies(g, Play{{w}, {}, {}}, alt));
    StrategyAutomaton nobody{{}, {"m"}, "m", {}, {}};
    EXPECT_TRUE(play_satisfies(g, deviates, nobody));
    (void)left;
}

TEST(Strategy, JsonRoundTrip) {
    StrategyAutomaton alt = load_strategy(fixture::corpus("fig2_alternating.strategy"));
    StrategyAutomaton back = strategy_from_json(strategy_to_json(alt));
    EXPECT_EQ(back.coalition, alt.coalition);
    EXPECT_EQ(back.act, alt.act);
    EXPECT_EQ(back.update, alt.update);
    EXPECT_EQ(back.init, alt.init);
}

TEST(Strategy, BindRejectsUnknownAgent) {
    Game g = load_game(fixture::corpus("fig1.game"));
    StrategyAutomaton alt = load_strategy(fixture::corpus("fig2_alternating.strategy"));
    EXPECT_THROW(bind_strategy(g, alt), Error);
}

TEST(GameProperty, SimulationAndCosts) {
    fixture::Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        Game g = fixture::random_game(rng);
        // A memoryless random strategy for agent a.
        StrategyAutomaton s{{"a"}, {"m"}, "m", {{{"m", "a"}, g.actions()[fixture::pick(rng, g.action_count())]}}, {{"m|*|*", "m"}}};
        Play play = simulate(g, s, AdversaryPolicy::lexicographic(), 8, fixture::pick(rng, g.state_count()));
        ASSERT_TRUE(is_play(g, play));
        EXPECT_TRUE(play_satisfies(g, play, s));
        Rational gamma(1 + static_cast<int>(fixture::pick(rng, 3)), 4);
        CostVector prev(g.agent_count(), Rational(0));
        for (std::size_t n = 0; n <= play.length(); ++n) {
            Play prefix{{play.states.begin(), play.states.begin() + n + 1},
                        {play.profiles.begin(), play.profiles.begin() + n},
                        {play.costs.begin(), play.costs.begin() + n}};
            CostVector c = discounted_cost(g, prefix, gamma);
            for (AgentId a = 0; a < g.agent_count(); ++a) EXPECT_LE(prev[a], c[a]);
            prev = c;
        }
    }
}

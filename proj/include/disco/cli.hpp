#pragma once

#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "disco/checker.hpp"
#include "disco/error.hpp"
#include "disco/formula.hpp"
#include "disco/game.hpp"
#include "disco/oracle.hpp"
#include "disco/parse.hpp"
#include "disco/proof.hpp"
#include "disco/proof_gen.hpp"
#include "disco/rational.hpp"

// Subcommand bodies, kept apart from argument parsing so tests can drive
// them with plain values and string streams.
namespace disco::cli {

enum Exit : int { kOk = 0, kFalse = 1, kUnknown = 2, kUsage = 3 };

inline int exit_for(Status s) {
    switch (s) {
    case Status::True: return kOk;
    case Status::False: return kFalse;
    case Status::Unknown: return kUnknown;
    }
    return kUnknown;
}

inline int report(const Error& e, std::ostream& err) {
    err << "error " << e.what() << "\n";
    return kUsage;
}

inline Rational parse_gamma(const std::string& text) {
    Rational g;
    try {
        g = parse_rational(text);
    } catch (const Error&) {
        fail("E-GAMMA", "discount factor '" + text + "' is not a rational");
    }
    require_discount(g);
    return g;
}

inline int cmd_validate(const std::string& game_path, std::ostream& out, std::ostream& err) {
    try {
        Game g = load_game(game_path);
        out << "ok: " << g.state_count() << " states, " << g.transition_count() << " transitions\n";
        return kOk;
    } catch (const Error& e) {
        return report(e, err);
    }
}

struct CheckOptions {
    std::string game;
    std::string state;
    std::string gamma;
    std::string formula;
    std::optional<std::size_t> max_depth;
    std::optional<std::string> witness;
    std::optional<std::size_t> oracle_horizon;
};

inline CheckLimits limits_from_env(CheckLimits limits) {
    if (const char* cap = std::getenv("DISCO_MAX_GOALS")) {
        try {
            limits.max_goals = std::stoul(cap);
        } catch (const std::exception&) {
            fail("E-LIMITS", std::string("DISCO_MAX_GOALS is not a number: ") + cap);
        }
    }
    return limits;
}

inline int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        Rational gamma = parse_gamma(opt.gamma);
        Game g = load_game(opt.game);
        StateId state = g.state_id(opt.state);
        Formula f = parse_formula(opt.formula);

        if (opt.oracle_horizon) {
            Status st = Status::Unknown;
            std::string reason = "oracle horizon " + std::to_string(*opt.oracle_horizon);
            try {
                st = oracle_check(g, state, f, gamma, *opt.oracle_horizon);
            } catch (const Error& e) {
                if (e.code() != "E-LIMITS") throw;
                reason = e.what();
            }
            out << to_string(st) << " " << reason << "\n";
            return exit_for(st);
        }

        CheckContext ctx{gamma, limits_from_env({})};
        if (opt.max_depth) ctx.limits.max_depth = *opt.max_depth;
        Verdict v = check(g, state, f, ctx);
        out << to_string(v.status) << " " << v.reason << "\n";
        if (opt.witness) {
            if (!v.witness) {
                err << "no witness written: the verdict carries no strategy\n";
            } else {
                std::ofstream file(*opt.witness);
                if (!file) fail("E-IO", "cannot write " + *opt.witness);
                file << strategy_to_json(*v.witness).dump(2) << "\n";
            }
        }
        return exit_for(v.status);
    } catch (const Error& e) {
        return report(e, err);
    }
}

struct SimulateOptions {
    std::string game;
    std::string strategy;
    std::string start;
    std::size_t depth = 0;
    std::string gamma;
};

inline std::string render_cost_line(const Game& g, const CostVector& cost) {
    std::string line;
    for (AgentId a = 0; a < g.agent_count(); ++a)
        line += (a ? ", " : "") + g.agents()[a] + ": " + to_string(cost[a]);
    return line;
}

inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        Rational gamma = parse_gamma(opt.gamma);
        Game g = load_game(opt.game);
        StrategyAutomaton s = load_strategy(opt.strategy);
        Play play = simulate(g, s, AdversaryPolicy::lexicographic(), opt.depth, g.state_id(opt.start));
        out << g.state_name(play.states[0]) << "\n";
        for (std::size_t i = 0; i < play.length(); ++i)
            out << "  {" << g.render_profile(play.profiles[i]) << "} costs {" << g.render_costs(play.costs[i])
                << "} -> " << g.state_name(play.states[i + 1]) << "\n";
        out << render_cost_line(g, discounted_cost(g, play, gamma)) << "\n";
        return kOk;
    } catch (const Error& e) {
        return report(e, err);
    }
}

inline int cmd_prove(const std::string& script_path, std::ostream& out, std::ostream& err) {
    Script s;
    try {
        s = load_script(script_path);
    } catch (const Error& e) {
        return report(e, err);
    }
    Report r = verify_script(s);
    if (r.ok) {
        out << "VALID\n";
        return kOk;
    }
    out << "line " << r.first_error->line << ": " << r.first_error->code << ": " << r.first_error->message << "\n";
    return kFalse;
}

inline int cmd_gen_supermono(const std::string& antecedent, const std::string& consequent, std::ostream& out,
                             std::ostream& err) {
    try {
        Formula a = parse_formula(antecedent);
        Formula c = parse_formula(consequent);
        if (!a.is_modal() || !c.is_modal()) fail("E-SYNTAX", "both sides must be modal formulas");
        if (a.sub() != c.sub()) fail("E-SYNTAX", "both sides must share one body");
        out << render(gen_supermonotonicity(a.budget(), c.budget(), a.sub()));
        return kOk;
    } catch (const Error& e) {
        return report(e, err);
    }
}

// ---------------------------------------------------------------------------
// Worked examples

struct Claim {
    std::string game;
    std::string state;
    Rational gamma;
    std::string formula;
    Status expected;
};

/// Budgets follow the closed forms of the corresponding cost series, so the
/// claims stay meaningful for any discount factor on the first two games.
/// The third game is pinned to 2/3.
inline std::vector<Claim> example_claims(const Rational& g) {
    auto r = [](const Rational& q) { return to_string(q); };
    const Rational one = 1;
    const Rational fig3_gamma = Rational(2, 3);
    const Rational sq = one / (1 - g * g);
    std::vector<Claim> claims = {
        {"fig1", "w", g, "[a:" + r(2 / (one - g)) + "] p", Status::True},
        {"fig1", "w", g, "[a:" + r(one / (one - g)) + "] p", Status::True},
        {"fig1", "w", g, "[a:" + r(one / (one - g) - Rational(1, 100)) + "] p", Status::False},
        {"fig1", "s", g, "p", Status::False},
        {"fig2", "w", g, "[a:" + r(100 / (one - g)) + "] p", Status::True},
        {"fig2", "w", g, "[a:" + r(100 / (one - g) - 1) + "] p", Status::False},
        {"fig2", "w", g, "[b:" + r(200 * g * sq) + "] p", Status::True},
        {"fig2", "w", g, "[b:" + r(200 * g * sq - 1) + "] p", Status::False},
        {"fig2", "w", g, "[a:" + r(sq) + ", b:" + r(g * sq) + "] p", Status::True},
        {"fig2", "w", g, "[a:" + r(sq) + ", b:" + r(g * sq - Rational(1, 100)) + "] p", Status::False},
        {"fig3", "w1", fig3_gamma, "[a:8/9, b:8/9, d:0] p", Status::True},
        {"fig3", "w1", fig3_gamma, "[a:791/900, b:8/9, d:0] p", Status::False},
        {"fig3", "w1", fig3_gamma, "[a:16/9, b:16/9, d:0] p", Status::True},
    };
    return claims;
}

inline int cmd_reproduce(const std::string& corpus_dir, const std::optional<std::string>& gamma_text,
                         std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    bool all = true;
    try {
        Rational gamma = gamma_text ? parse_gamma(*gamma_text) : Rational(1, 2);
        std::map<std::string, Game> games;
        for (const char* name : {"fig1", "fig2", "fig3"})
            games.emplace(name, load_game((fs::path(corpus_dir) / (std::string(name) + ".game")).string()));

        for (const Claim& c : example_claims(gamma)) {
            const Game& g = games.at(c.game);
            CheckContext ctx{c.gamma, limits_from_env({})};
            Verdict v = check(g, c.state, parse_formula(c.formula), ctx);
            bool pass = v.status == c.expected;
            all = all && pass;
            out << (pass ? "PASS " : "FAIL ") << c.game << " " << c.state << " |= " << c.formula << " at gamma "
                << to_string(c.gamma) << ": expected " << to_string(c.expected) << ", got " << to_string(v.status)
                << "\n";
        }

        // The alternating joint strategy: a pays 1+g^2+g^4+..., b pays g+g^3+...
        const Game& g2 = games.at("fig2");
        StrategyAutomaton alt = load_strategy((fs::path(corpus_dir) / "fig2_alternating.strategy").string());
        const std::size_t depth = 4;
        Play play = simulate(g2, alt, AdversaryPolicy::lexicographic(), depth, g2.state_id("w"));
        CostVector expected(2, Rational(0));
        for (std::size_t i = 0; i < depth; ++i) expected[i % 2] += pow(gamma, static_cast<unsigned>(i));
        CostVector got = discounted_cost(g2, play, gamma);
        bool pass = got == expected;
        all = all && pass;
        out << (pass ? "PASS " : "FAIL ") << "fig2 alternating strategy, " << depth << " steps: expected "
            << render_cost_line(g2, expected) << ", got " << render_cost_line(g2, got) << "\n";
    } catch (const Error& e) {
        return report(e, err);
    }
    out << (all ? "all claims reproduced\n" : "some claims did not reproduce\n");
    return all ? kOk : kFalse;
}

} // namespace disco::cli

#pragma once

#include <cstddef>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "disco/formula.hpp"
#include "disco/game.hpp"
#include "disco/rational.hpp"

namespace disco::fixture {

inline std::string corpus(const std::string& file) { return std::string(DISCO_CORPUS_DIR) + "/" + file; }

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Small rationals with denominators 1..4, the sort of values budgets take.
inline Rational small_rational(Rng& rng, int max_num = 12) {
    int num = static_cast<int>(pick(rng, static_cast<std::size_t>(max_num) + 1));
    int den = 1 + static_cast<int>(pick(rng, 4));
    return Rational(num, den);
}

struct GameShape {
    std::size_t states = 4;
    std::size_t agents = 2;
    std::size_t actions = 3; // including eps
    double terminal_rate = 0.05;
    double branch_rate = 0.25; // chance of a second outcome
};

/// Random serial game honouring the zero-cost convention for eps, with
/// variables p and q. Every cell lists its outcomes explicitly.
inline nlohmann::json random_game_json(Rng& rng, const GameShape& shape) {
    using nlohmann::json;
    std::size_t n = 1 + pick(rng, shape.states);
    std::size_t k = 2 + pick(rng, shape.actions - 1);
    json j;
    std::vector<std::string> agents, states, actions;
    for (std::size_t a = 0; a < shape.agents; ++a) agents.push_back(std::string(1, static_cast<char>('a' + a)));
    for (std::size_t s = 0; s < n; ++s) states.push_back("s" + std::to_string(s));
    actions.push_back("eps");
    for (std::size_t i = 1; i < k; ++i) actions.push_back("x" + std::to_string(i));
    j["agents"] = agents;
    j["states"] = states;
    j["actions"] = actions;
    j["epsilon"] = "eps";
    json transitions = json::array();
    std::size_t profiles = 1;
    for (std::size_t a = 0; a < agents.size(); ++a) profiles *= k;
    for (const auto& from : states)
        for (std::size_t p = 0; p < profiles; ++p) {
            json profile;
            std::vector<std::size_t> choice(agents.size());
            std::size_t rest = p;
            for (std::size_t a = agents.size(); a-- > 0;) {
                choice[a] = rest % k;
                rest /= k;
                profile[agents[a]] = actions[choice[a]];
            }
            std::size_t outcomes = coin(rng, shape.branch_rate) ? 2 : 1;
            for (std::size_t o = 0; o < outcomes; ++o) {
                json costs = json::object();
                for (std::size_t a = 0; a < agents.size(); ++a)
                    if (choice[a] != 0) costs[agents[a]] = to_string(Rational(static_cast<int>(pick(rng, 3)), 1 + static_cast<int>(pick(rng, 2))));
                std::string to = coin(rng, shape.terminal_rate) ? std::string(kTerminalName) : states[pick(rng, n)];
                transitions.push_back({{"from", from}, {"profile", profile}, {"costs", costs}, {"to", to}});
            }
        }
    j["transitions"] = transitions;
    json valuation;
    for (const char* var : {"p", "q"}) {
        json holds = json::array();
        for (const auto& s : states)
            if (coin(rng, 0.7)) holds.push_back(s);
        valuation[var] = holds;
    }
    j["valuation"] = valuation;
    return j;
}

inline Game random_game(Rng& rng, const GameShape& shape = {}) { return validate_game(random_game_json(rng, shape)); }

struct FormulaShape {
    int depth = 4;
    std::vector<std::string> agents{"a", "b", "c"};
    std::vector<std::string> vars{"p", "q", "r"};
    double modal_rate = 0.3;
};

inline Budget random_budget(Rng& rng, const std::vector<std::string>& agents, bool allow_empty = true) {
    Budget b;
    for (const auto& a : agents)
        if (coin(rng)) b[a] = small_rational(rng);
    if (b.empty() && !allow_empty) b[agents[pick(rng, agents.size())]] = small_rational(rng);
    return b;
}

inline Formula random_formula(Rng& rng, const FormulaShape& shape, int depth) {
    if (depth <= 0 || coin(rng, 0.2)) return Formula::var(shape.vars[pick(rng, shape.vars.size())]);
    double roll = std::uniform_real_distribution<double>(0, 1)(rng);
    if (roll < shape.modal_rate) return Formula::modal(random_budget(rng, shape.agents), random_formula(rng, shape, depth - 1));
    if (roll < shape.modal_rate + (1 - shape.modal_rate) / 3) return Formula::negation(random_formula(rng, shape, depth - 1));
    return Formula::implies(random_formula(rng, shape, depth - 1), random_formula(rng, shape, depth - 1));
}

inline Formula random_formula(Rng& rng, const FormulaShape& shape = {}) { return random_formula(rng, shape, shape.depth); }

/// Same tree with every budget erased, for comparing skeletons.
inline std::string skeleton(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Var: return f.name();
    case Formula::Kind::Not: return "!" + skeleton(f.sub());
    case Formula::Kind::Implies: return "(" + skeleton(f.lhs()) + "->" + skeleton(f.rhs()) + ")";
    case Formula::Kind::Modal: {
        std::string agents;
        for (const auto& [a, _] : f.budget()) agents += a + ",";
        return "[" + agents + "]" + skeleton(f.sub());
    }
    }
    return {};
}

} // namespace disco::fixture

namespace disco {

// Readable gtest failure messages.
inline void PrintTo(const Formula& f, std::ostream* os) { *os << render(f); }

} // namespace disco

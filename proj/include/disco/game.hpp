#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "disco/error.hpp"
#include "disco/formula.hpp"
#include "disco/rational.hpp"

namespace disco {

using StateId = std::size_t;
using AgentId = std::size_t;
using ActionId = std::size_t;

/// Complete action profile, indexed by AgentId.
using Profile = std::vector<ActionId>;
/// Per-agent cost of one transition, indexed by AgentId.
using CostVector = std::vector<Rational>;

struct Outcome {
    CostVector costs;
    StateId to;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

inline constexpr std::string_view kTerminalName = "#t";

/// A validated finite game. Agents and actions are stored sorted so that
/// index order coincides with lexicographic name order; profiles are encoded
/// in mixed radix with agent 0 most significant, so increasing profile index
/// is lexicographic profile order.
class Game {
public:
    const std::vector<AgentName>& agents() const { return agents_; }
    const std::vector<std::string>& states() const { return states_; }
    const std::vector<std::string>& actions() const { return actions_; }
    ActionId epsilon() const { return epsilon_; }
    StateId terminal() const { return states_.size(); }
    bool is_terminal(StateId s) const { return s == terminal(); }

    std::size_t agent_count() const { return agents_.size(); }
    std::size_t state_count() const { return states_.size(); }
    std::size_t action_count() const { return actions_.size(); }
    std::size_t profile_count() const { return profile_count_; }

    const std::string& state_name(StateId s) const {
        static const std::string terminal_name(kTerminalName);
        return s == terminal() ? terminal_name : states_.at(s);
    }

    std::optional<AgentId> find_agent(std::string_view name) const { return find(agents_, name); }
    std::optional<ActionId> find_action(std::string_view name) const { return find(actions_, name); }
    std::optional<StateId> find_state(std::string_view name) const {
        if (name == kTerminalName) return terminal();
        return find(states_, name);
    }

    AgentId agent_id(std::string_view name) const { return require(find_agent(name), "agent", name); }
    ActionId action_id(std::string_view name) const { return require(find_action(name), "action", name); }
    StateId state_id(std::string_view name) const { return require(find_state(name), "state", name); }

    std::size_t profile_index(const Profile& p) const {
        std::size_t index = 0;
        for (ActionId a : p) index = index * actions_.size() + a;
        return index;
    }
    Profile profile_at(std::size_t index) const {
        Profile p(agents_.size());
        for (std::size_t i = agents_.size(); i-- > 0;) {
            p[i] = index % actions_.size();
            index /= actions_.size();
        }
        return p;
    }

    /// Every mechanism outcome of (state, profile), sorted by target name
    /// then cost vector. Never empty for a non-terminal state.
    const std::vector<Outcome>& outcomes(StateId s, const Profile& p) const {
        return table_.at(s * profile_count_ + profile_index(p));
    }
    const std::vector<Outcome>& outcomes(StateId s, std::size_t profile) const {
        return table_.at(s * profile_count_ + profile);
    }

    /// Propositional valuation; variables absent from the file hold nowhere.
    bool holds(const std::string& var, StateId s) const {
        if (s == terminal()) return false;
        auto it = valuation_.find(var);
        return it != valuation_.end() && it->second.count(s) > 0;
    }

    /// Largest single-step cost the mechanism ever charges the agent.
    const Rational& max_step_cost(AgentId a) const { return max_cost_.at(a); }

    std::size_t transition_count() const {
        std::size_t n = 0;
        for (const auto& cell : table_) n += cell.size();
        return n;
    }

    std::string render_profile(const Profile& p) const {
        std::string out;
        for (AgentId a = 0; a < agents_.size(); ++a) {
            if (a) out += ",";
            out += agents_[a] + "=" + actions_.at(p.at(a));
        }
        return out;
    }
    std::string render_costs(const CostVector& u) const {
        std::string out;
        for (AgentId a = 0; a < agents_.size(); ++a) {
            if (a) out += ",";
            out += agents_[a] + "=" + to_string(u.at(a));
        }
        return out;
    }

private:
    friend Game validate_game(const nlohmann::json& description);

    static std::optional<std::size_t> find(const std::vector<std::string>& names, std::string_view name) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        return std::nullopt;
    }
    static std::size_t require(std::optional<std::size_t> id, const char* what, std::string_view name) {
        if (!id) fail("E-BAD-REF", std::string("unknown ") + what + " '" + std::string(name) + "'");
        return *id;
    }

    std::vector<AgentName> agents_;
    std::vector<std::string> states_;
    std::vector<std::string> actions_;
    ActionId epsilon_ = 0;
    std::size_t profile_count_ = 0;
    std::vector<std::vector<Outcome>> table_;
    std::map<std::string, std::set<StateId>> valuation_;
    std::vector<Rational> max_cost_;
};

namespace detail {

inline std::vector<std::string> string_array(const nlohmann::json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_array()) fail("E-FORMAT", std::string("field '") + field + "' must be an array");
    std::vector<std::string> out;
    for (const auto& item : j.at(field)) {
        if (!item.is_string()) fail("E-FORMAT", std::string("field '") + field + "' must hold strings");
        out.push_back(item.get<std::string>());
    }
    std::set<std::string> unique(out.begin(), out.end());
    if (unique.size() != out.size()) fail("E-FORMAT", std::string("duplicate entry in '") + field + "'");
    return out;
}

inline Rational json_rational(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    fail("E-FORMAT", "rationals are written as \"num/den\" strings or integers, got " + v.dump());
}

struct RawTransition {
    StateId from;
    std::vector<std::optional<ActionId>> pattern; // nullopt = wildcard
    std::size_t specificity;
    Outcome outcome;
};

} // namespace detail

/// Builds a Game from its JSON description: resolves names, expands wildcard
/// profiles (most specific pattern wins, ties are unioned) and verifies the
/// zero-cost action and seriality conditions over every complete profile.
inline Game validate_game(const nlohmann::json& description) {
    using detail::string_array;
    if (!description.is_object()) fail("E-FORMAT", "game description must be a JSON object");
    Game g;
    g.agents_ = string_array(description, "agents");
    std::sort(g.agents_.begin(), g.agents_.end());
    g.states_ = string_array(description, "states");
    g.actions_ = string_array(description, "actions");
    std::sort(g.actions_.begin(), g.actions_.end());
    for (const auto& a : g.agents_)
        if (!is_identifier(a)) fail("E-FORMAT", "invalid agent name '" + a + "'");
    for (const auto& s : g.states_)
        if (s.empty() || s == kTerminalName) fail("E-FORMAT", "invalid state name '" + s + "'");
    if (g.states_.empty()) fail("E-FORMAT", "a game needs at least one state");
    if (g.actions_.empty()) fail("E-FORMAT", "a game needs at least one action");
    if (!description.contains("epsilon") || !description.at("epsilon").is_string())
        fail("E-FORMAT", "field 'epsilon' must be a string");
    g.epsilon_ = g.action_id(description.at("epsilon").get<std::string>());

    double cells = 1;
    for (std::size_t i = 0; i < g.agents_.size(); ++i) cells *= static_cast<double>(g.actions_.size());
    if (cells * static_cast<double>(g.states_.size()) > 4e6) fail("E-FORMAT", "profile space too large to enumerate");
    g.profile_count_ = static_cast<std::size_t>(cells);

    std::vector<detail::RawTransition> raw;
    if (!description.contains("transitions") || !description.at("transitions").is_array())
        fail("E-FORMAT", "field 'transitions' must be an array");
    for (const auto& t : description.at("transitions")) {
        if (!t.is_object() || !t.contains("from") || !t.contains("to"))
            fail("E-FORMAT", "transition needs 'from' and 'to': " + t.dump());
        detail::RawTransition r;
        r.from = g.state_id(t.at("from").get<std::string>());
        if (g.is_terminal(r.from)) fail("E-BAD-REF", "transitions cannot leave the terminal state");
        r.outcome.to = g.state_id(t.at("to").get<std::string>());
        r.pattern.assign(g.agents_.size(), std::nullopt);
        r.specificity = 0;
        if (t.contains("profile")) {
            for (const auto& [agent, action] : t.at("profile").items()) {
                AgentId a = g.agent_id(agent);
                std::string name = action.get<std::string>();
                if (name == "*") continue;
                r.pattern[a] = g.action_id(name);
                ++r.specificity;
            }
        }
        r.outcome.costs.assign(g.agents_.size(), Rational(0));
        if (t.contains("costs")) {
            for (const auto& [agent, value] : t.at("costs").items()) {
                Rational c = detail::json_rational(value);
                if (c < 0) fail("E-NEG-COST", "negative cost " + to_string(c) + " for agent " + agent);
                r.outcome.costs[g.agent_id(agent)] = c;
            }
        }
        raw.push_back(std::move(r));
    }

    g.table_.assign(g.states_.size() * g.profile_count_, {});
    g.max_cost_.assign(g.agents_.size(), Rational(0));
    for (StateId s = 0; s < g.states_.size(); ++s) {
        for (std::size_t index = 0; index < g.profile_count_; ++index) {
            Profile p = g.profile_at(index);
            auto matches = [&](const detail::RawTransition& r) {
                if (r.from != s) return false;
                for (AgentId a = 0; a < p.size(); ++a)
                    if (r.pattern[a] && *r.pattern[a] != p[a]) return false;
                return true;
            };
            std::size_t best = 0;
            bool any = false;
            for (const auto& r : raw)
                if (matches(r)) {
                    best = any ? std::max(best, r.specificity) : r.specificity;
                    any = true;
                }
            if (!any)
                fail("E-SERIAL", "no outcome for state " + g.states_[s] + " under profile {" + g.render_profile(p) + "}");
            auto& cell = g.table_[s * g.profile_count_ + index];
            for (const auto& r : raw) {
                if (!matches(r) || r.specificity != best) continue;
                for (AgentId a = 0; a < p.size(); ++a)
                    if (p[a] == g.epsilon_ && r.outcome.costs[a] != 0)
                        fail("E-EPSILON-COST", "agent " + g.agents_[a] + " plays " + g.actions_[g.epsilon_] + " at " +
                                                   g.states_[s] + " under {" + g.render_profile(p) + "} but is charged " +
                                                   to_string(r.outcome.costs[a]));
                if (std::find(cell.begin(), cell.end(), r.outcome) == cell.end()) cell.push_back(r.outcome);
            }
            std::sort(cell.begin(), cell.end(), [&](const Outcome& x, const Outcome& y) {
                const std::string& nx = g.state_name(x.to);
                const std::string& ny = g.state_name(y.to);
                if (nx != ny) return nx < ny;
                return x.costs < y.costs;
            });
            for (const auto& o : cell)
                for (AgentId a = 0; a < o.costs.size(); ++a) g.max_cost_[a] = std::max(g.max_cost_[a], o.costs[a]);
        }
    }

    if (description.contains("valuation")) {
        const auto& val = description.at("valuation");
        if (!val.is_object()) fail("E-FORMAT", "field 'valuation' must be an object");
        for (const auto& [var, states] : val.items()) {
            if (!is_identifier(var)) fail("E-FORMAT", "invalid variable name '" + var + "'");
            auto& set = g.valuation_[var];
            for (const auto& s : states) {
                StateId id = g.state_id(s.get<std::string>());
                if (g.is_terminal(id)) fail("E-BAD-REF", "valuation cannot mention the terminal state");
                set.insert(id);
            }
        }
    }
    return g;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("E-IO", "cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return nlohmann::json::parse(buffer.str(), nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::exception& e) {
        fail("E-FORMAT", path + ": " + e.what());
    }
}

inline Game load_game(const std::string& path) {
    try {
        return validate_game(read_json_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail("E-FORMAT", path + ": " + e.what());
    }
}

/// Name-level view of the mechanism: all (costs, next state) pairs for a
/// complete profile given as agent -> action.
inline std::vector<Outcome> successors(const Game& g, std::string_view state,
                                       const std::map<AgentName, std::string>& profile) {
    StateId s = g.state_id(state);
    if (g.is_terminal(s)) fail("E-BAD-REF", "the terminal state has no successors");
    Profile p(g.agent_count());
    std::vector<bool> seen(g.agent_count(), false);
    for (const auto& [agent, action] : profile) {
        AgentId a = g.agent_id(agent);
        p[a] = g.action_id(action);
        seen[a] = true;
    }
    for (AgentId a = 0; a < seen.size(); ++a)
        if (!seen[a]) fail("E-BAD-REF", "profile does not assign an action to agent " + g.agents()[a]);
    return g.outcomes(s, p);
}

/// w0, δ0, u0, w1, ..., wn stored column-wise.
struct Play {
    std::vector<StateId> states;
    std::vector<Profile> profiles;
    std::vector<CostVector> costs;

    std::size_t length() const { return profiles.size(); }
};

inline bool is_play(const Game& g, const Play& play) {
    if (play.states.empty()) return false;
    std::size_t n = play.states.size() - 1;
    if (play.profiles.size() != n || play.costs.size() != n) return false;
    for (std::size_t i = 0; i <= n; ++i) {
        if (play.states[i] > g.terminal()) return false;
        if (i < n && g.is_terminal(play.states[i])) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Profile& p = play.profiles[i];
        if (p.size() != g.agent_count() || play.costs[i].size() != g.agent_count()) return false;
        for (ActionId a : p)
            if (a >= g.action_count()) return false;
        const auto& cell = g.outcomes(play.states[i], p);
        Outcome step{play.costs[i], play.states[i + 1]};
        if (std::find(cell.begin(), cell.end(), step) == cell.end()) return false;
    }
    return true;
}

/// Σ_i u_i γ^i per agent, exact.
inline CostVector discounted_cost(const Play& play, const Rational& gamma, std::size_t agent_count) {
    require_discount(gamma);
    CostVector total(agent_count, Rational(0));
    Rational weight = 1;
    for (const auto& u : play.costs) {
        for (AgentId a = 0; a < agent_count && a < u.size(); ++a) total[a] += u[a] * weight;
        weight *= gamma;
    }
    return total;
}

inline CostVector discounted_cost(const Game& g, const Play& play, const Rational& gamma) {
    return discounted_cost(play, gamma, g.agent_count());
}

/// Finite-memory presentation of a perfect-recall coalition strategy.
///
/// Update keys are "mem|profile|to" or "mem|profile|to|costs", where profile
/// and costs use the canonical "agent=value,..." rendering of the game and
/// to is a state name or "#t". The profile and to segments may be "*".
/// Lookup prefers the most specific key.
struct StrategyAutomaton {
    Coalition coalition;
    std::vector<std::string> memory;
    std::string init;
    std::map<std::pair<std::string, AgentName>, std::string> act;
    std::map<std::string, std::string> update;

    const std::string& action(const std::string& mem, const AgentName& agent) const {
        auto it = act.find({mem, agent});
        if (it == act.end()) fail("E-STRATEGY", "no action for agent " + agent + " in memory state " + mem);
        return it->second;
    }

    std::optional<std::string> next(const Game& g, const std::string& mem, const Profile& p, const CostVector& u,
                                    StateId to) const {
        const std::string prof = g.render_profile(p);
        const std::string& target = g.state_name(to);
        for (const std::string& key : {mem + "|" + prof + "|" + target + "|" + g.render_costs(u),
                                       mem + "|" + prof + "|" + target, mem + "|*|" + target, mem + "|" + prof + "|*",
                                       mem + "|*|*"}) {
            auto it = update.find(key);
            if (it != update.end()) return it->second;
        }
        return std::nullopt;
    }
};

/// Checks that the automaton is usable against g: coalition members and
/// actions exist and act is total on the coalition.
inline void bind_strategy(const Game& g, const StrategyAutomaton& s) {
    for (const auto& agent : s.coalition) g.agent_id(agent);
    std::set<std::string> mems(s.memory.begin(), s.memory.end());
    if (!mems.count(s.init)) fail("E-STRATEGY", "initial memory state " + s.init + " is not declared");
    for (const auto& mem : s.memory)
        for (const auto& agent : s.coalition) g.action_id(s.action(mem, agent));
    for (const auto& [key, target] : s.update)
        if (!mems.count(target)) fail("E-STRATEGY", "update " + key + " targets undeclared memory state " + target);
}

inline StrategyAutomaton strategy_from_json(const nlohmann::json& j) {
    try {
        StrategyAutomaton s;
        for (const auto& a : j.at("coalition")) s.coalition.insert(a.get<std::string>());
        for (const auto& m : j.at("memory")) s.memory.push_back(m.get<std::string>());
        s.init = j.at("init").get<std::string>();
        for (const auto& [key, action] : j.at("act").items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos) fail("E-STRATEGY", "act key '" + key + "' must read \"mem,agent\"");
            s.act[{key.substr(0, comma), key.substr(comma + 1)}] = action.get<std::string>();
        }
        if (j.contains("update"))
            for (const auto& [key, mem] : j.at("update").items()) s.update[key] = mem.get<std::string>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        fail("E-STRATEGY", std::string("malformed strategy file: ") + e.what());
    }
}

inline nlohmann::json strategy_to_json(const StrategyAutomaton& s) {
    nlohmann::json j;
    j["coalition"] = std::vector<std::string>(s.coalition.begin(), s.coalition.end());
    j["memory"] = s.memory;
    j["init"] = s.init;
    j["act"] = nlohmann::json::object();
    for (const auto& [key, action] : s.act) j["act"][key.first + "," + key.second] = action;
    j["update"] = nlohmann::json::object();
    for (const auto& [key, mem] : s.update) j["update"][key] = mem;
    return j;
}

inline StrategyAutomaton load_strategy(const std::string& path) { return strategy_from_json(read_json_file(path)); }

/// Def.-style "play follows strategy": every coalition member's action at
/// step i equals what the automaton prescribes after replaying steps < i.
inline bool play_satisfies(const Game& g, const Play& play, const StrategyAutomaton& s) {
    if (s.coalition.empty() || play.length() == 0) return true;
    std::string mem = s.init;
    for (std::size_t i = 0; i < play.length(); ++i) {
        for (const auto& agent : s.coalition) {
            auto a = g.find_agent(agent);
            auto it = s.act.find({mem, agent});
            if (!a || it == s.act.end()) return false;
            auto action = g.find_action(it->second);
            if (!action || play.profiles[i][*a] != *action) return false;
        }
        if (i + 1 < play.length()) {
            auto next = s.next(g, mem, play.profiles[i], play.costs[i], play.states[i + 1]);
            if (!next) return false;
            mem = *next;
        }
    }
    return true;
}

/// Resolves everything the strategy leaves open during simulation: the
/// actions of non-members and the mechanism's nondeterministic choice.
struct AdversaryPolicy {
    /// Fills the entries of partial not owned by the coalition.
    std::function<Profile(const Game&, const Play&, Profile partial, const std::vector<bool>& fixed)> complete;
    /// Picks one of the (nonempty, sorted) outcomes.
    std::function<std::size_t(const Game&, const Play&, const Profile&, const std::vector<Outcome>&)> choose;

    /// Smallest completion in lexicographic action order, then the smallest
    /// outcome.
    static AdversaryPolicy lexicographic() {
        AdversaryPolicy adv;
        adv.complete = [](const Game&, const Play&, Profile partial, const std::vector<bool>& fixed) {
            for (AgentId a = 0; a < partial.size(); ++a)
                if (!fixed[a]) partial[a] = 0;
            return partial;
        };
        adv.choose = [](const Game&, const Play&, const Profile&, const std::vector<Outcome>&) -> std::size_t {
            return 0;
        };
        return adv;
    }
};

inline Play simulate(const Game& g, const StrategyAutomaton& s, const AdversaryPolicy& adv, std::size_t depth,
                     StateId start) {
    if (start >= g.state_count()) fail("E-BAD-REF", "simulation must start in a non-terminal state");
    bind_strategy(g, s);
    Play play;
    play.states.push_back(start);
    std::string mem = s.init;
    std::vector<bool> fixed(g.agent_count(), false);
    Profile partial(g.agent_count(), 0);
    for (const auto& agent : s.coalition) fixed[g.agent_id(agent)] = true;
    for (std::size_t step = 0; step < depth && !g.is_terminal(play.states.back()); ++step) {
        for (const auto& agent : s.coalition) partial[g.agent_id(agent)] = g.action_id(s.action(mem, agent));
        Profile p = adv.complete(g, play, partial, fixed);
        const auto& cell = g.outcomes(play.states.back(), p);
        const Outcome& o = cell.at(adv.choose(g, play, p, cell));
        play.profiles.push_back(p);
        play.costs.push_back(o.costs);
        play.states.push_back(o.to);
        if (step + 1 < depth && !g.is_terminal(o.to)) {
            auto next = s.next(g, mem, p, o.costs, o.to);
            if (!next)
                fail("E-STRATEGY", "no update from memory " + mem + " on {" + g.render_profile(p) + "} to " +
                                       g.state_name(o.to));
            mem = *next;
        }
    }
    return play;
}

} // namespace disco

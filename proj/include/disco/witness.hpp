#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "disco/error.hpp"
#include "disco/formula.hpp"
#include "disco/game.hpp"
#include "disco/rational.hpp"

namespace disco {

struct AuditResult {
    bool ok = true;
    std::string violation;
    std::size_t histories = 0; // merged history classes visited
};

namespace detail {

inline bool holds_propositionally(const Game& g, StateId s, const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Var: return g.holds(f.name(), s);
    case Formula::Kind::Not: return !holds_propositionally(g, s, f.sub());
    case Formula::Kind::Implies: return !holds_propositionally(g, s, f.lhs()) || holds_propositionally(g, s, f.rhs());
    case Formula::Kind::Modal: fail("E-AUDIT", "witness audit needs a modality-free condition");
    }
    return false;
}

inline bool dominated(const std::vector<Rational>& x, const std::vector<Rational>& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > y[i]) return false;
    return true;
}

} // namespace detail

/// Replays a strategy automaton from `start` against every choice of the
/// other agents and every mechanism outcome for `depth` steps. Each prefix
/// must keep the coalition's discounted spend within `budget` (start-state
/// money, exact) and must never reach a non-terminal state violating the
/// modality-free `condition`. Histories with the same step, state and memory
/// differ only in what was spent, so only Pareto-maximal spends are kept.
inline AuditResult audit_witness(const Game& g, StateId start, const StrategyAutomaton& s, const Budget& budget,
                                 const Formula& condition, const Rational& gamma, std::size_t depth) {
    require_discount(gamma);
    bind_strategy(g, s);
    std::vector<AgentId> members;
    std::vector<Rational> limit;
    for (const auto& [agent, value] : budget) {
        members.push_back(g.agent_id(agent));
        limit.push_back(value);
    }
    for (const auto& agent : s.coalition)
        if (!budget.count(agent)) fail("E-AUDIT", "strategy member " + agent + " has no budget");

    AuditResult result;
    auto violate = [&](std::string why) {
        result.ok = false;
        result.violation = std::move(why);
        return result;
    };
    if (!detail::holds_propositionally(g, start, condition))
        return violate("condition fails at the start state " + g.state_name(start));

    using Frontier = std::map<std::pair<StateId, std::string>, std::vector<std::vector<Rational>>>;
    Frontier frontier;
    frontier[{start, s.init}].push_back(std::vector<Rational>(members.size(), Rational(0)));
    std::vector<bool> fixed(g.agent_count(), false);
    for (const auto& agent : s.coalition) fixed[g.agent_id(agent)] = true;

    Rational weight = 1;
    for (std::size_t step = 0; step < depth && !frontier.empty(); ++step) {
        Frontier next;
        for (const auto& [node, spends] : frontier) {
            const auto& [state, mem] = node;
            result.histories += spends.size();
            Profile partial(g.agent_count(), 0);
            for (const auto& agent : s.coalition) partial[g.agent_id(agent)] = g.action_id(s.action(mem, agent));
            for (std::size_t index = 0; index < g.profile_count(); ++index) {
                Profile p = g.profile_at(index);
                bool agrees = true;
                for (AgentId a = 0; a < p.size(); ++a)
                    if (fixed[a] && p[a] != partial[a]) agrees = false;
                if (!agrees) continue;
                for (const Outcome& o : g.outcomes(state, index)) {
                    std::optional<std::string> mem_next;
                    if (!g.is_terminal(o.to)) {
                        if (!detail::holds_propositionally(g, o.to, condition))
                            return violate("step " + std::to_string(step + 1) + " reaches " + g.state_name(o.to) +
                                           " where the condition fails");
                        mem_next = s.next(g, mem, p, o.costs, o.to);
                        if (!mem_next)
                            return violate("automaton has no update from " + mem + " on {" + g.render_profile(p) +
                                           "} to " + g.state_name(o.to));
                    }
                    for (const auto& spent : spends) {
                        std::vector<Rational> total = spent;
                        for (std::size_t i = 0; i < members.size(); ++i) {
                            total[i] += o.costs[members[i]] * weight;
                            if (total[i] > limit[i])
                                return violate("agent " + g.agents()[members[i]] + " spends " + to_string(total[i]) +
                                               " > " + to_string(limit[i]) + " by step " + std::to_string(step + 1));
                        }
                        if (!mem_next) continue;
                        auto& bucket = next[{o.to, *mem_next}];
                        bool covered = false;
                        for (const auto& other : bucket)
                            if (detail::dominated(total, other)) covered = true;
                        if (covered) continue;
                        std::erase_if(bucket, [&](const auto& other) { return detail::dominated(other, total); });
                        bucket.push_back(std::move(total));
                    }
                }
            }
        }
        frontier = std::move(next);
        weight *= gamma;
    }
    return result;
}

} // namespace disco

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "disco/error.hpp"
#include "disco/formula.hpp"
#include "disco/game.hpp"
#include "disco/rational.hpp"
#include "disco/status.hpp"

namespace disco {

/// Both bounds of a finite-horizon brute-force evaluation of one formula.
struct OracleResult {
    Status verdict = Status::Unknown;
    bool optimistic = false;  // some strategy survives the first `horizon` steps
    bool pessimistic = false; // ... and then ends where nothing can go wrong
};

/// Brute-force evaluator that follows the satisfaction relation literally:
/// costs are accumulated in start-state money as Σ u_i γ^i and the body is
/// checked as φ/γ^n after n steps. Coalition strategies of depth `horizon`
/// are searched as AND-OR trees over histories; histories agreeing on
/// (step, state, money spent) have identical futures and are merged.
///
/// The optimistic answer ignores everything after the horizon. The
/// pessimistic answer additionally asks every surviving non-terminal leaf to
/// have all remaining budgets at or above U_a/(1-γ), a body whose nested
/// budgets are all that large too, and to sit in the coalition-safe region of
/// the states satisfying the body. It shares no code with Checker.
class Oracle {
public:
    Oracle(const Game& g, Rational gamma, std::size_t horizon, std::size_t node_budget = 4'000'000)
        : game_(g), gamma_(std::move(gamma)), horizon_(horizon), node_budget_(node_budget) {
        require_discount(gamma_);
        if (horizon_ == 0) fail("E-LIMITS", "oracle horizon must be positive");
        for (AgentId a = 0; a < g.agent_count(); ++a) {
            Rational top = 0;
            for (StateId s = 0; s < g.state_count(); ++s)
                for (std::size_t p = 0; p < g.profile_count(); ++p)
                    for (const auto& o : g.outcomes(s, p))
                        if (o.costs[a] > top) top = o.costs[a];
            tail_bound_.push_back(top / (1 - gamma_));
        }
    }

    OracleResult evaluate(StateId state, const Formula& f) {
        std::string key = std::to_string(state) + "|" + render(f);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        OracleResult r;
        switch (f.kind()) {
        case Formula::Kind::Var: {
            bool v = game_.holds(f.name(), state);
            r = {v ? Status::True : Status::False, v, v};
            break;
        }
        case Formula::Kind::Not: {
            OracleResult sub = evaluate(state, f.sub());
            r.verdict = kleene_not(sub.verdict);
            break;
        }
        case Formula::Kind::Implies: {
            OracleResult a = evaluate(state, f.lhs());
            OracleResult b = evaluate(state, f.rhs());
            r.verdict = kleene_implies(a.verdict, b.verdict);
            break;
        }
        case Formula::Kind::Modal: {
            Search search{*this, f};
            auto [opt, pes] = search.explore(state, 0, std::vector<Rational>(search.members.size(), Rational(0)));
            r.optimistic = opt;
            r.pessimistic = pes;
            r.verdict = pes ? Status::True : (opt ? Status::Unknown : Status::False);
            break;
        }
        }
        if (!f.is_modal()) {
            r.optimistic = r.verdict != Status::False;
            r.pessimistic = r.verdict == Status::True;
        }
        memo_.emplace(std::move(key), r);
        return r;
    }

private:
    struct Search {
        Oracle& oracle;
        std::vector<AgentId> members;
        std::vector<Rational> limit;
        Formula body;
        std::map<std::string, std::pair<bool, bool>> memo;

        Search(Oracle& o, const Formula& f) : oracle(o), body(f.sub()) {
            for (const auto& [agent, value] : f.budget()) {
                members.push_back(o.game_.agent_id(agent));
                limit.push_back(value);
            }
        }

        std::pair<bool, bool> explore(StateId state, std::size_t step, const std::vector<Rational>& spent) {
            const Game& g = oracle.game_;
            std::string key = std::to_string(state) + "@" + std::to_string(step);
            for (const auto& x : spent) key += "," + to_string(x);
            if (auto it = memo.find(key); it != memo.end()) return it->second;
            if (++oracle.nodes_ > oracle.node_budget_)
                fail("E-LIMITS", "oracle exceeded its node budget of " + std::to_string(oracle.node_budget_));

            const Rational scale = pow(oracle.gamma_, static_cast<unsigned>(step));
            Formula now = divide(body, scale);
            OracleResult here = oracle.evaluate(state, now);
            bool opt = here.verdict != Status::False;
            bool pes = here.verdict == Status::True;
            if (!opt) return memo[key] = {false, false};

            if (step == oracle.horizon_) {
                if (pes) pes = oracle.saturated(members, limit, spent, scale) && oracle.stable(now) &&
                               oracle.safe(members, now)[state];
                return memo[key] = {opt, pes};
            }

            bool any_opt = false, any_pes = false;
            std::vector<bool> member(g.agent_count(), false);
            for (AgentId a : members) member[a] = true;
            for (std::size_t rep = 0; rep < g.profile_count() && !(any_opt && any_pes); ++rep) {
                Profile r = g.profile_at(rep);
                bool is_rep = true;
                for (AgentId a = 0; a < r.size(); ++a)
                    if (!member[a] && r[a] != 0) is_rep = false;
                if (!is_rep) continue;
                bool all_opt = true, all_pes = true;
                for (std::size_t p = 0; p < g.profile_count() && all_opt; ++p) {
                    Profile full = g.profile_at(p);
                    bool agrees = true;
                    for (AgentId a = 0; a < full.size(); ++a)
                        if (member[a] && full[a] != r[a]) agrees = false;
                    if (!agrees) continue;
                    for (const auto& o : g.outcomes(state, p)) {
                        std::vector<Rational> next = spent;
                        bool affordable = true;
                        for (std::size_t i = 0; i < members.size(); ++i) {
                            next[i] += o.costs[members[i]] * scale;
                            if (next[i] > limit[i]) affordable = false;
                        }
                        if (!affordable) {
                            all_opt = all_pes = false;
                            break;
                        }
                        if (g.is_terminal(o.to)) continue;
                        auto [co, cp] = explore(o.to, step + 1, next);
                        all_opt = all_opt && co;
                        all_pes = all_pes && cp;
                        if (!all_opt) break;
                    }
                }
                any_opt = any_opt || all_opt;
                any_pes = any_pes || (all_opt && all_pes);
            }
            return memo[key] = {any_opt, pes && any_pes};
        }
    };

    bool saturated(const std::vector<AgentId>& members, const std::vector<Rational>& limit,
                   const std::vector<Rational>& spent, const Rational& scale) const {
        for (std::size_t i = 0; i < members.size(); ++i)
            if ((limit[i] - spent[i]) / scale < tail_bound_[members[i]]) return false;
        return true;
    }

    /// True when every nested budget is already out of reach of any cost
    /// stream, so further rescaling cannot change the formula's truth.
    bool stable(const Formula& f) const {
        switch (f.kind()) {
        case Formula::Kind::Var: return true;
        case Formula::Kind::Not: return stable(f.sub());
        case Formula::Kind::Implies: return stable(f.lhs()) && stable(f.rhs());
        case Formula::Kind::Modal:
            for (const auto& [agent, value] : f.budget())
                if (value < tail_bound_[game_.agent_id(agent)]) return false;
            return stable(f.sub());
        }
        return false;
    }

    std::vector<bool> safe(const std::vector<AgentId>& members, const Formula& body) {
        std::string key;
        for (AgentId a : members) key += std::to_string(a) + ",";
        key += render(body);
        if (auto it = safe_.find(key); it != safe_.end()) return it->second;
        std::vector<bool> z(game_.state_count());
        for (StateId s = 0; s < game_.state_count(); ++s) z[s] = evaluate(s, body).verdict == Status::True;
        std::vector<bool> member(game_.agent_count(), false);
        for (AgentId a : members) member[a] = true;
        bool changed = true;
        while (changed) {
            changed = false;
            for (StateId s = 0; s < game_.state_count(); ++s) {
                if (!z[s]) continue;
                bool keep = false;
                for (std::size_t rep = 0; rep < game_.profile_count() && !keep; ++rep) {
                    Profile r = game_.profile_at(rep);
                    bool ok = true;
                    for (AgentId a = 0; a < r.size(); ++a)
                        if (!member[a] && r[a] != 0) ok = false;
                    if (!ok) continue;
                    for (std::size_t p = 0; p < game_.profile_count() && ok; ++p) {
                        Profile full = game_.profile_at(p);
                        bool agrees = true;
                        for (AgentId a = 0; a < full.size(); ++a)
                            if (member[a] && full[a] != r[a]) agrees = false;
                        if (!agrees) continue;
                        for (const auto& o : game_.outcomes(s, p))
                            if (!game_.is_terminal(o.to) && !z[o.to]) ok = false;
                    }
                    keep = ok;
                }
                if (!keep) {
                    z[s] = false;
                    changed = true;
                }
            }
        }
        return safe_.emplace(std::move(key), z).first->second;
    }

    const Game& game_;
    Rational gamma_;
    std::size_t horizon_;
    std::size_t node_budget_;
    std::size_t nodes_ = 0;
    std::vector<Rational> tail_bound_;
    std::map<std::string, OracleResult> memo_;
    std::map<std::string, std::vector<bool>> safe_;
};

inline OracleResult oracle_evaluate(const Game& g, StateId state, const Formula& f, const Rational& gamma,
                                    std::size_t horizon) {
    if (state >= g.state_count()) fail("E-BAD-REF", "oracle must start in a non-terminal state");
    return Oracle(g, gamma, horizon).evaluate(state, f);
}

inline Status oracle_check(const Game& g, StateId state, const Formula& f, const Rational& gamma,
                           std::size_t horizon) {
    return oracle_evaluate(g, state, f, gamma, horizon).verdict;
}

} // namespace disco

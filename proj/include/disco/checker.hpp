#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "disco/error.hpp"
#include "disco/formula.hpp"
#include "disco/game.hpp"
#include "disco/rational.hpp"
#include "disco/status.hpp"

namespace disco {

struct CheckLimits {
    std::size_t max_depth = 64;
    std::size_t max_goals = 1'000'000;
};

struct CheckContext {
    Rational gamma;
    CheckLimits limits{};
};

struct Verdict {
    Status status = Status::Unknown;
    /// Present only for True verdicts on modal formulas.
    std::optional<StrategyAutomaton> witness;
    std::string reason;
};

/// Counters over solved maintenance goals, for reporting decisiveness.
struct CheckStats {
    std::size_t goals = 0;
    std::size_t decided_true = 0;
    std::size_t decided_false = 0;
    std::size_t undecided = 0;
    std::size_t cycles = 0;
    std::size_t saturated = 0;
    std::size_t subsumed = 0; // settled by comparing budgets with a settled goal
};

/// U_a / (1 - gamma): the most the agent can ever be charged, in money of
/// the current step. Budgets at or above it never constrain.
inline Rational saturation_bound(const Game& g, AgentId agent, const Rational& gamma) {
    require_discount(gamma);
    return g.max_step_cost(agent) / (1 - gamma);
}

inline Rational saturation_bound(const Game& g, std::string_view agent, const Rational& gamma) {
    return saturation_bound(g, g.agent_id(agent), gamma);
}

/// Coalition safety: the largest Z ⊆ target from which the coalition can
/// always pick a profile whose every completion and outcome stays in Z or
/// terminates.
inline std::vector<bool> safety_region(const Game& g, const std::vector<AgentId>& members, std::vector<bool> z) {
    std::vector<bool> member(g.agent_count(), false);
    for (AgentId a : members) member[a] = true;
    auto keeps = [&](StateId s) {
        for (std::size_t index = 0; index < g.profile_count(); ++index) {
            // Enumerate coalition profiles via their representative with all
            // non-members at action 0; then quantify over the non-members.
            Profile rep = g.profile_at(index);
            bool representative = true;
            for (AgentId a = 0; a < rep.size(); ++a)
                if (!member[a] && rep[a] != 0) representative = false;
            if (!representative) continue;
            bool ok = true;
            for (std::size_t other = 0; ok && other < g.profile_count(); ++other) {
                Profile p = g.profile_at(other);
                bool agrees = true;
                for (AgentId a = 0; a < p.size(); ++a)
                    if (member[a] && p[a] != rep[a]) agrees = false;
                if (!agrees) continue;
                for (const auto& o : g.outcomes(s, other))
                    if (!g.is_terminal(o.to) && !z[o.to]) {
                        ok = false;
                        break;
                    }
            }
            if (ok) return true;
        }
        return false;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (StateId s = 0; s < g.state_count(); ++s)
            if (z[s] && !keeps(s)) {
                z[s] = false;
                changed = true;
            }
    }
    return z;
}

inline std::set<std::string> safety_region(const Game& g, const Coalition& coalition,
                                           const std::set<std::string>& target) {
    std::vector<AgentId> members;
    for (const auto& a : coalition) members.push_back(g.agent_id(a));
    std::vector<bool> z(g.state_count(), false);
    for (const auto& s : target) {
        StateId id = g.state_id(s);
        if (g.is_terminal(id)) fail("E-BAD-REF", "the terminal state cannot be a safety target");
        z[id] = true;
    }
    std::set<std::string> out;
    z = safety_region(g, members, std::move(z));
    for (StateId s = 0; s < g.state_count(); ++s)
        if (z[s]) out.insert(g.states()[s]);
    return out;
}

/// Three-valued model checker for the discounted maintenance modality.
///
/// A maintenance goal (w, C, b, φ) carries its budget in the money of the
/// step at which w is reached. It holds iff w satisfies φ and some coalition
/// profile makes every outcome (u, w') affordable (u ≤_C b) and either
/// terminal or a goal (w', C, (b-u)/γ, φ/γ) that holds again. The relation is
/// the greatest fixed point of that step, explored depth-first with tabling:
///   * a goal that meets an identical goal on the search stack is accepted;
///   * budget entries at or above the agent's saturation bound become
///     unconstrained and stay so; a goal with only such entries and a body
///     that no longer changes under rescaling is settled by coalition safety;
///   * nested budgets in bodies are clamped at the bound, which leaves the
///     truth of the body unchanged and makes rescaling reach a fixed point;
///   * more budget never hurts, so a goal is settled as soon as it has at
///     least the budget of a proved goal, or at most that of a refuted one,
///     for the same state, coalition and body;
///   * running out of depth or goals yields Unknown, never a guess.
/// True answers depending on a goal still on the stack stay provisional
/// until the root of their strongly connected region succeeds and are
/// dropped if it does not.
class Checker {
public:
    Checker(const Game& g, CheckContext ctx) : game_(g), ctx_(std::move(ctx)) {
        require_discount(ctx_.gamma);
        if (ctx_.limits.max_depth == 0 || ctx_.limits.max_goals == 0)
            fail("E-LIMITS", "check limits must be positive");
        bound_.reserve(g.agent_count());
        for (AgentId a = 0; a < g.agent_count(); ++a) bound_.push_back(saturation_bound(g, a, ctx_.gamma));
    }

    const CheckStats& stats() const { return stats_; }
    const Rational& bound(AgentId a) const { return bound_.at(a); }

    /// Satisfaction at a non-terminal state. Propositional structure is exact;
    /// Unknown only propagates up from undecided modal subgoals.
    Verdict check(StateId state, const Formula& f) {
        require_state(state);
        require_agents(f);
        if (f.is_modal()) return check_maintain(state, f.budget(), f.sub());
        Verdict v;
        v.status = eval(state, f);
        v.reason = reason_for(v.status);
        return v;
    }

    Verdict check_maintain(StateId state, const Budget& budget, const Formula& body) {
        require_state(state);
        require_agents(Formula::modal(budget, body));
        Goal root = make_goal(state, budget, body);
        std::size_t low = kNoLow;
        Verdict v;
        v.status = solve(root, 0, low);
        v.reason = reason_for(v.status);
        if (v.status == Status::True) v.witness = extract_witness(root);
        return v;
    }

private:
    static constexpr std::size_t kNoLow = std::numeric_limits<std::size_t>::max();

    struct Goal {
        StateId state;
        std::vector<AgentId> members;
        std::vector<std::optional<Rational>> budget; // nullopt: saturated
        Formula body;
        std::string body_key;
        std::string key;

        std::string class_key() const {
            std::string k = std::to_string(state) + "|";
            for (AgentId a : members) k += std::to_string(a) + ",";
            return k + "|" + body_key;
        }
    };

    using Entries = std::vector<std::optional<Rational>>;

    static bool leq(const Entries& x, const Entries& y) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!y[i]) continue;
            if (!x[i] || *x[i] > *y[i]) return false;
        }
        return true;
    }

    /// Settled goals of one (state, coalition, body) class, kept as
    /// antichains: minimal proved budgets and maximal refuted ones.
    struct Frontier {
        std::vector<Goal> proved;
        std::vector<Entries> refuted;
    };

    struct Entry {
        Status status;
        bool committed = false;
        bool via_safety = false;
        std::size_t alpha = 0; // representative profile index of the chosen coalition profile
        std::size_t low = kNoLow;
        std::size_t depth = 0;
    };

    void require_state(StateId s) const {
        if (s >= game_.state_count()) fail("E-BAD-REF", "goals must start in a non-terminal state");
    }

    void require_agents(const Formula& f) const {
        switch (f.kind()) {
        case Formula::Kind::Var: return;
        case Formula::Kind::Not: require_agents(f.sub()); return;
        case Formula::Kind::Implies:
            require_agents(f.lhs());
            require_agents(f.rhs());
            return;
        case Formula::Kind::Modal:
            for (const auto& [agent, _] : f.budget()) game_.agent_id(agent);
            require_agents(f.sub());
            return;
        }
    }

    std::string reason_for(Status s) const {
        if (s == Status::True) return "strategy found";
        if (s == Status::False) return "no coalition strategy keeps the condition within budget";
        return limit_reason_.empty() ? "undecided" : limit_reason_;
    }

    /// Clamps every budget entry inside f at the agent's saturation bound.
    Formula clamp(const Formula& f) const {
        switch (f.kind()) {
        case Formula::Kind::Var: return f;
        case Formula::Kind::Not: return Formula::negation(clamp(f.sub()));
        case Formula::Kind::Implies: return Formula::implies(clamp(f.lhs()), clamp(f.rhs()));
        case Formula::Kind::Modal: {
            Budget b;
            for (const auto& [agent, value] : f.budget())
                b.emplace(agent, std::min(value, bound_[game_.agent_id(agent)]));
            return Formula::modal(std::move(b), clamp(f.sub()));
        }
        }
        return f;
    }

    /// Body of the next step: φ/γ with nested budgets clamped.
    const std::pair<Formula, std::string>& next_body(const Goal& g) {
        auto it = next_body_.find(g.body_key);
        if (it != next_body_.end()) return it->second;
        Formula next = g.body.modal_depth() == 0 ? g.body : clamp(divide(g.body, ctx_.gamma));
        return next_body_.emplace(g.body_key, std::make_pair(next, render(next))).first->second;
    }

    Goal make_goal(StateId state, const Budget& budget, const Formula& body) const {
        std::vector<AgentId> members;
        std::vector<std::optional<Rational>> entries;
        for (const auto& [agent, value] : budget) {
            AgentId a = game_.agent_id(agent);
            members.push_back(a);
            if (value >= bound_[a]) entries.emplace_back(std::nullopt);
            else entries.emplace_back(value);
        }
        Formula clamped = clamp(body);
        std::string body_key = render(clamped);
        Goal g{state, std::move(members), std::move(entries), std::move(clamped), std::move(body_key), {}};
        g.key = goal_key(g);
        return g;
    }

    std::string goal_key(const Goal& g) const {
        std::string key = std::to_string(g.state) + "|[";
        for (std::size_t i = 0; i < g.members.size(); ++i) {
            if (i) key += ",";
            key += game_.agents()[g.members[i]] + ":" + (g.budget[i] ? to_string(*g.budget[i]) : std::string("inf"));
        }
        return key + "]" + g.body_key;
    }

    Status eval(StateId s, const Formula& f) {
        switch (f.kind()) {
        case Formula::Kind::Var: return game_.holds(f.name(), s) ? Status::True : Status::False;
        case Formula::Kind::Not: return kleene_not(eval(s, f.sub()));
        case Formula::Kind::Implies: {
            Status a = eval(s, f.lhs());
            if (a == Status::False) return Status::True;
            return kleene_implies(a, eval(s, f.rhs()));
        }
        case Formula::Kind::Modal: {
            Goal g = make_goal(s, f.budget(), f.sub());
            std::size_t low = kNoLow;
            // A nested query starts its own depth count; its goals differ
            // from every pending outer goal, so its cycles stay inside it.
            return solve(g, 0, low);
        }
        }
        return Status::Unknown;
    }

    Status body_status(StateId s, const Goal& g) {
        if (g.body.modal_depth() == 0) return eval(s, g.body);
        std::string key = std::to_string(s) + "|" + g.body_key;
        auto it = body_cache_.find(key);
        if (it != body_cache_.end()) return it->second;
        Status st = eval(s, g.body);
        if (st != Status::Unknown) body_cache_.emplace(std::move(key), st);
        return st;
    }

    /// Representative profile indices (non-members at action 0) in
    /// lexicographic order of the coalition's actions.
    const std::vector<std::size_t>& coalition_profiles(const std::vector<AgentId>& members) {
        std::string key;
        for (AgentId a : members) key += std::to_string(a) + ",";
        auto it = reps_.find(key);
        if (it != reps_.end()) return it->second;
        std::vector<bool> member(game_.agent_count(), false);
        for (AgentId a : members) member[a] = true;
        std::vector<std::size_t> out;
        for (std::size_t index = 0; index < game_.profile_count(); ++index) {
            Profile p = game_.profile_at(index);
            bool rep = true;
            for (AgentId a = 0; a < p.size(); ++a)
                if (!member[a] && p[a] != 0) rep = false;
            if (rep) out.push_back(index);
        }
        return reps_.emplace(key, std::move(out)).first->second;
    }

    /// All complete profile indices agreeing with the representative on members.
    const std::vector<std::size_t>& completions(const std::vector<AgentId>& members, std::size_t rep_index) {
        std::string key = std::to_string(rep_index) + ":";
        for (AgentId a : members) key += std::to_string(a) + ",";
        if (auto it = completions_.find(key); it != completions_.end()) return it->second;
        Profile rep = game_.profile_at(rep_index);
        std::vector<bool> member(game_.agent_count(), false);
        for (AgentId a : members) member[a] = true;
        std::vector<std::size_t> out;
        for (std::size_t index = 0; index < game_.profile_count(); ++index) {
            Profile p = game_.profile_at(index);
            bool agrees = true;
            for (AgentId a = 0; a < p.size(); ++a)
                if (member[a] && p[a] != rep[a]) agrees = false;
            if (agrees) out.push_back(index);
        }
        return completions_.emplace(std::move(key), std::move(out)).first->second;
    }

    /// Child goal after outcome o, or nullopt if o overspends a member.
    std::optional<Goal> step(const Goal& g, const Outcome& o) {
        std::vector<std::optional<Rational>> entries;
        entries.reserve(g.budget.size());
        for (std::size_t i = 0; i < g.members.size(); ++i) {
            const auto& b = g.budget[i];
            if (!b) {
                entries.emplace_back(std::nullopt);
                continue;
            }
            const Rational& u = o.costs[g.members[i]];
            if (u > *b) return std::nullopt;
            Rational rest = (*b - u) / ctx_.gamma;
            if (rest >= bound_[g.members[i]]) entries.emplace_back(std::nullopt);
            else entries.emplace_back(std::move(rest));
        }
        const auto& [body, body_key] = next_body(g);
        Goal child{o.to, g.members, std::move(entries), body, body_key, {}};
        if (!game_.is_terminal(o.to)) child.key = goal_key(child);
        return child;
    }

    bool all_saturated(const Goal& g) const {
        return std::all_of(g.budget.begin(), g.budget.end(), [](const auto& b) { return !b.has_value(); });
    }

    struct SafetyView {
        std::vector<bool> sure;     // body definitely true and safe
        std::vector<bool> possible; // body not definitely false and safe
    };

    const SafetyView& safety_view(const Goal& g) {
        std::string key;
        for (AgentId a : g.members) key += std::to_string(a) + ",";
        key += "|" + g.body_key;
        auto it = safety_.find(key);
        if (it != safety_.end()) return it->second;
        std::vector<bool> sure(game_.state_count()), possible(game_.state_count());
        for (StateId s = 0; s < game_.state_count(); ++s) {
            Status st = body_status(s, g);
            sure[s] = st == Status::True;
            possible[s] = st != Status::False;
        }
        SafetyView view{safety_region(game_, g.members, std::move(sure)),
                        safety_region(game_, g.members, std::move(possible))};
        return safety_.emplace(std::move(key), std::move(view)).first->second;
    }

    void drop_provisional(std::size_t mark) {
        for (std::size_t i = mark; i < provisional_.size(); ++i) table_.erase(provisional_[i].key);
        provisional_.erase(provisional_.begin() + static_cast<std::ptrdiff_t>(mark), provisional_.end());
    }

    void commit_provisional(std::size_t mark) {
        for (std::size_t i = mark; i < provisional_.size(); ++i) {
            auto it = table_.find(provisional_[i].key);
            if (it == table_.end()) continue;
            it->second.committed = true;
            remember_proved(provisional_[i]);
        }
        provisional_.erase(provisional_.begin() + static_cast<std::ptrdiff_t>(mark), provisional_.end());
    }

    void remember_proved(const Goal& g) {
        auto& proved = frontier_[g.class_key()].proved;
        for (const Goal& p : proved)
            if (leq(p.budget, g.budget)) return;
        std::erase_if(proved, [&](const Goal& p) { return leq(g.budget, p.budget); });
        proved.push_back(g);
    }

    void remember_refuted(const Goal& g) {
        auto& refuted = frontier_[g.class_key()].refuted;
        for (const Entries& r : refuted)
            if (leq(g.budget, r)) return;
        std::erase_if(refuted, [&](const Entries& r) { return leq(r, g.budget); });
        refuted.push_back(g.budget);
    }

    /// A proved goal whose budget g's budget covers, if any.
    const Goal* proved_below(const Goal& g) const {
        auto it = frontier_.find(g.class_key());
        if (it == frontier_.end()) return nullptr;
        for (const Goal& p : it->second.proved)
            if (leq(p.budget, g.budget)) return &p;
        return nullptr;
    }

    bool refuted_above(const Goal& g) const {
        auto it = frontier_.find(g.class_key());
        if (it == frontier_.end()) return false;
        for (const Entries& r : it->second.refuted)
            if (leq(g.budget, r)) return true;
        return false;
    }

    Status record(const Goal& g, Status st, std::size_t depth) {
        if (st == Status::False) {
            ++stats_.decided_false;
            remember_refuted(g);
        }
        if (st == Status::Unknown) ++stats_.undecided;
        Entry e{st, true, false, 0, kNoLow, depth};
        table_.insert_or_assign(g.key, e);
        return st;
    }

    Status solve(const Goal& g, std::size_t depth, std::size_t& parent_low) {
        auto cached = table_.find(g.key);
        if (cached != table_.end() && cached->second.status != Status::Unknown) {
            if (!cached->second.committed) parent_low = std::min(parent_low, cached->second.low);
            return cached->second.status;
        }
        if (proved_below(g)) {
            ++stats_.subsumed;
            return Status::True;
        }
        if (refuted_above(g)) {
            ++stats_.subsumed;
            return Status::False;
        }
        if (cached != table_.end() && depth >= cached->second.depth) return Status::Unknown;
        if (auto it = on_stack_.find(g.key); it != on_stack_.end()) {
            ++stats_.cycles;
            parent_low = std::min(parent_low, it->second);
            return Status::True;
        }
        if (depth >= ctx_.limits.max_depth) {
            ++stats_.undecided;
            if (limit_reason_.empty())
                limit_reason_ = "depth limit " + std::to_string(ctx_.limits.max_depth) + " reached";
            return Status::Unknown;
        }
        if (stats_.goals >= ctx_.limits.max_goals) {
            ++stats_.undecided;
            limit_reason_ = "goal cap " + std::to_string(ctx_.limits.max_goals) + " reached";
            return Status::Unknown;
        }
        ++stats_.goals;

        Status here = body_status(g.state, g);
        if (here == Status::False) return record(g, Status::False, depth);

        if (all_saturated(g) && next_body(g).second == g.body_key) {
            const SafetyView& view = safety_view(g);
            if (view.sure[g.state] && here == Status::True) {
                ++stats_.saturated;
                ++stats_.decided_true;
                Entry e{Status::True, true, true, 0, kNoLow, depth};
                table_.insert_or_assign(g.key, e);
                remember_proved(g);
                return Status::True;
            }
            if (!view.possible[g.state])
                return record(g, Status::False, depth);
        }

        const std::size_t index = stack_.size();
        stack_.push_back(g.key);
        on_stack_.emplace(g.key, index);
        const std::size_t mark = provisional_.size();

        std::size_t low = kNoLow;
        Status result = Status::False;
        bool undecided = here == Status::Unknown;
        std::size_t chosen = 0;
        for (std::size_t rep : coalition_profiles(g.members)) {
            Status branch = Status::True;
            std::size_t branch_low = kNoLow;
            for (std::size_t profile : completions(g.members, rep)) {
                for (const Outcome& o : game_.outcomes(g.state, profile)) {
                    std::optional<Goal> child = step(g, o);
                    if (!child) {
                        branch = Status::False;
                        break;
                    }
                    if (game_.is_terminal(o.to)) continue;
                    Status st = solve(*child, depth + 1, branch_low);
                    if (st == Status::False) {
                        branch = Status::False;
                        break;
                    }
                    if (st == Status::Unknown) branch = Status::Unknown;
                }
                if (branch == Status::False) break;
            }
            if (branch == Status::True) {
                result = Status::True;
                chosen = rep;
                low = branch_low;
                break;
            }
            if (branch == Status::Unknown) undecided = true;
        }
        if (result == Status::True && here == Status::Unknown) result = Status::Unknown;
        if (result == Status::False && undecided) result = Status::Unknown;

        stack_.pop_back();
        on_stack_.erase(g.key);

        if (result != Status::True) {
            drop_provisional(mark);
            return record(g, result, depth);
        }
        ++stats_.decided_true;
        Entry e{Status::True, false, false, chosen, low, depth};
        if (low >= index) {
            e.committed = true;
            e.low = kNoLow;
            table_.insert_or_assign(g.key, e);
            commit_provisional(mark);
            remember_proved(g);
        } else {
            table_.insert_or_assign(g.key, e);
            provisional_.push_back(g);
            parent_low = std::min(parent_low, low);
        }
        return Status::True;
    }

    /// Smallest coalition profile keeping every outcome inside the safe set.
    std::size_t safe_profile(const Goal& g, const std::vector<bool>& z) {
        for (std::size_t rep : coalition_profiles(g.members)) {
            bool ok = true;
            for (std::size_t profile : completions(g.members, rep)) {
                for (const Outcome& o : game_.outcomes(g.state, profile))
                    if (!game_.is_terminal(o.to) && !z[o.to]) ok = false;
                if (!ok) break;
            }
            if (ok) return rep;
        }
        fail("E-INTERNAL", "safe state without a safe profile");
    }

    /// Reads the winning choices back out of the table as a finite-memory
    /// strategy: one memory state per goal reachable under those choices.
    StrategyAutomaton extract_witness(const Goal& root) {
        StrategyAutomaton s;
        for (AgentId a : root.members) s.coalition.insert(game_.agents()[a]);
        std::map<std::string, std::string> names;
        std::deque<Goal> queue;
        auto name_of = [&](const Goal& given) -> const std::string& {
            // A goal settled by comparison plays the strategy of the proved
            // goal below it; with more money that strategy stays affordable.
            const Goal* settled = &given;
            auto entry = table_.find(given.key);
            if (entry == table_.end() || entry->second.status != Status::True)
                if (const Goal* below = proved_below(given)) settled = below;
            const Goal& g = *settled;
            auto it = names.find(g.key);
            if (it != names.end()) return it->second;
            std::string name = "g" + std::to_string(names.size());
            s.memory.push_back(name);
            queue.push_back(g);
            return names.emplace(g.key, name).first->second;
        };
        s.init = name_of(root);
        while (!queue.empty()) {
            Goal g = queue.front();
            queue.pop_front();
            const std::string mem = names.at(g.key);
            std::size_t rep = 0;
            if (all_saturated(g) && next_body(g).second == g.body_key && safety_view(g).sure[g.state]) {
                rep = safe_profile(g, safety_view(g).sure);
            } else {
                auto it = table_.find(g.key);
                if (it == table_.end() || it->second.status != Status::True)
                    fail("E-INTERNAL", "witness refers to an unproven goal " + g.key);
                rep = it->second.alpha;
            }
            Profile chosen = game_.profile_at(rep);
            for (AgentId a : g.members) s.act[{mem, game_.agents()[a]}] = game_.actions()[chosen[a]];
            for (std::size_t profile : completions(g.members, rep)) {
                Profile p = game_.profile_at(profile);
                std::map<StateId, std::vector<std::pair<const Outcome*, std::string>>> by_target;
                for (const Outcome& o : game_.outcomes(g.state, profile)) {
                    if (game_.is_terminal(o.to)) continue;
                    std::optional<Goal> child = step(g, o);
                    if (!child) fail("E-INTERNAL", "witness step overspends");
                    by_target[o.to].emplace_back(&o, name_of(*child));
                }
                for (const auto& [to, targets] : by_target) {
                    bool uniform = std::all_of(targets.begin(), targets.end(),
                                               [&](const auto& t) { return t.second == targets.front().second; });
                    std::string base = mem + "|" + game_.render_profile(p) + "|" + game_.state_name(to);
                    if (uniform) {
                        s.update[base] = targets.front().second;
                    } else {
                        for (const auto& [o, next] : targets) s.update[base + "|" + game_.render_costs(o->costs)] = next;
                    }
                }
            }
        }
        return s;
    }

    const Game& game_;
    CheckContext ctx_;
    std::vector<Rational> bound_;
    CheckStats stats_;
    std::string limit_reason_;

    std::unordered_map<std::string, Entry> table_;
    std::vector<Goal> provisional_;
    std::unordered_map<std::string, Frontier> frontier_;
    std::vector<std::string> stack_;
    std::unordered_map<std::string, std::size_t> on_stack_;

    std::unordered_map<std::string, std::pair<Formula, std::string>> next_body_;
    std::unordered_map<std::string, Status> body_cache_;
    std::unordered_map<std::string, SafetyView> safety_;
    std::unordered_map<std::string, std::vector<std::size_t>> reps_;
    std::unordered_map<std::string, std::vector<std::size_t>> completions_;
};

inline Verdict check(const Game& g, StateId state, const Formula& f, const CheckContext& ctx) {
    return Checker(g, ctx).check(state, f);
}

inline Verdict check(const Game& g, std::string_view state, const Formula& f, const CheckContext& ctx) {
    return check(g, g.state_id(state), f, ctx);
}

inline Verdict check_maintain(const Game& g, std::string_view state, const Budget& budget, const Formula& body,
                              const CheckContext& ctx) {
    return Checker(g, ctx).check_maintain(g.state_id(state), budget, body);
}

} // namespace disco

#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>

#include "disco/error.hpp"
#include "disco/rational.hpp"

namespace disco {

/// Agent names are nonempty tokens over letters, digits and '_'. They order
/// lexicographically, which fixes the canonical printing order of budgets.
using AgentName = std::string;
using Coalition = std::set<AgentName>;

/// Per-member spending limit of a modality. The key set *is* the coalition,
/// so the domain invariant holds by construction.
using Budget = std::map<AgentName, Rational>;

inline bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

inline Coalition coalition_of(const Budget& b) {
    Coalition c;
    for (const auto& [agent, _] : b) c.insert(agent);
    return c;
}

/// x <=_C y over the domain of x.
inline bool budget_leq(const Budget& x, const Budget& y) {
    for (const auto& [agent, value] : x) {
        auto it = y.find(agent);
        if (it == y.end() || value > it->second) return false;
    }
    return true;
}

class Formula {
public:
    enum class Kind { Var, Not, Implies, Modal };

    static Formula var(std::string name) {
        if (!is_identifier(name)) fail("E-SYNTAX", "invalid variable name '" + name + "'");
        return Formula(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, {}, {}}));
    }
    static Formula negation(Formula sub) {
        return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, std::move(sub.node_), {}}));
    }
    static Formula implies(Formula lhs, Formula rhs) {
        return Formula(
            std::make_shared<const Node>(Node{Kind::Implies, {}, {}, std::move(lhs.node_), std::move(rhs.node_)}));
    }
    static Formula modal(Budget budget, Formula body) {
        for (const auto& [agent, value] : budget) {
            if (!is_identifier(agent)) fail("E-SYNTAX", "invalid agent name '" + agent + "'");
            if (value < 0) fail("E-NEG-BUDGET", "negative budget " + to_string(value) + " for agent " + agent);
        }
        return Formula(
            std::make_shared<const Node>(Node{Kind::Modal, {}, std::move(budget), std::move(body.node_), {}}));
    }

    Kind kind() const { return node_->kind; }
    bool is_var() const { return kind() == Kind::Var; }
    bool is_not() const { return kind() == Kind::Not; }
    bool is_implies() const { return kind() == Kind::Implies; }
    bool is_modal() const { return kind() == Kind::Modal; }

    const std::string& name() const { return node_->name; }
    const Budget& budget() const { return node_->budget; }
    Coalition coalition() const { return coalition_of(node_->budget); }
    /// Operand of Not, body of Modal, antecedent of Implies.
    Formula sub() const { return Formula(node_->left); }
    Formula lhs() const { return Formula(node_->left); }
    Formula rhs() const { return Formula(node_->right); }

    friend bool operator==(const Formula& a, const Formula& b) { return same(a.node_.get(), b.node_.get()); }

    std::size_t size() const {
        switch (kind()) {
        case Kind::Var: return 1;
        case Kind::Not:
        case Kind::Modal: return 1 + sub().size();
        case Kind::Implies: return 1 + lhs().size() + rhs().size();
        }
        return 0;
    }

    /// Number of nested modal operators along the deepest branch.
    int modal_depth() const {
        switch (kind()) {
        case Kind::Var: return 0;
        case Kind::Not: return sub().modal_depth();
        case Kind::Modal: return 1 + sub().modal_depth();
        case Kind::Implies: return std::max(lhs().modal_depth(), rhs().modal_depth());
        }
        return 0;
    }

private:
    struct Node {
        Kind kind;
        std::string name;
        Budget budget;
        std::shared_ptr<const Node> left;
        std::shared_ptr<const Node> right;
    };

    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static bool same(const Node* a, const Node* b) {
        if (a == b) return true;
        if (a->kind != b->kind) return false;
        switch (a->kind) {
        case Kind::Var: return a->name == b->name;
        case Kind::Not: return same(a->left.get(), b->left.get());
        case Kind::Implies: return same(a->left.get(), b->left.get()) && same(a->right.get(), b->right.get());
        case Kind::Modal: return a->budget == b->budget && same(a->left.get(), b->left.get());
        }
        return false;
    }

    std::shared_ptr<const Node> node_;
};

/// Reserved variable behind the fixed tautology used wherever a proof needs ⊤.
inline const std::string kTopVariable = "p0";

inline Formula top() { return Formula::implies(Formula::var(kTopVariable), Formula::var(kTopVariable)); }

inline std::string render(const Budget& budget) {
    std::string out = "[";
    bool first = true;
    for (const auto& [agent, value] : budget) {
        if (!first) out += ", ";
        first = false;
        out += agent + ":" + to_string(value);
    }
    return out + "]";
}

/// Canonical text: agents sorted, rationals in lowest terms, every
/// implication parenthesized.
inline std::string render(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Var: return f.name();
    case Formula::Kind::Not: return "!" + render(f.sub());
    case Formula::Kind::Implies: return "(" + render(f.lhs()) + " -> " + render(f.rhs()) + ")";
    case Formula::Kind::Modal: return render(f.budget()) + " " + render(f.sub());
    }
    return {};
}

inline Budget divide(const Budget& budget, const Rational& mu) {
    Budget out;
    for (const auto& [agent, value] : budget) out.emplace_hint(out.end(), agent, value / mu);
    return out;
}

/// Rescales every budget in f by 1/mu: converts a formula stated in today's
/// money into the same obligation measured in money that is worth mu times
/// less per unit.
inline Formula divide(const Formula& f, const Rational& mu) {
    if (mu <= 0) fail("E-NONPOS-SCALE", "scale must be positive, got " + to_string(mu));
    switch (f.kind()) {
    case Formula::Kind::Var: return f;
    case Formula::Kind::Not: return Formula::negation(divide(f.sub(), mu));
    case Formula::Kind::Implies: return Formula::implies(divide(f.lhs(), mu), divide(f.rhs(), mu));
    case Formula::Kind::Modal: return Formula::modal(divide(f.budget(), mu), divide(f.sub(), mu));
    }
    return f;
}

} // namespace disco

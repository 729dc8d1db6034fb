#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "disco/error.hpp"
#include "disco/formula.hpp"
#include "disco/proof.hpp"
#include "disco/rational.hpp"

namespace disco {

namespace detail {

inline void require_valid(const Script& s, const char* what) {
    Report r = verify_script(s);
    if (!r.ok)
        fail("E-NOT-VALID", std::string(what) + " does not verify: line " + std::to_string(r.first_error->line) + ": " +
                                r.first_error->code);
}

} // namespace detail

/// Discharges hypothesis h (the last one equal to h) and proves h -> ψ.
/// Lines that do not depend on h are copied; the others are rebuilt through
/// the tautologies χ→(h→χ), h→h and (h→(a→b))→((h→a)→(h→b)).
inline Script deduction_transform(const Script& s, const Formula& h) {
    detail::require_valid(s, "input script");
    std::optional<std::size_t> drop;
    for (std::size_t i = s.hypotheses.size(); i-- > 0;)
        if (s.hypotheses[i] == h) {
            drop = i + 1;
            break;
        }
    if (!drop) fail("E-NO-SUCH-HYP", render(h) + " is not a hypothesis of the script");

    Script out;
    for (std::size_t i = 0; i < s.hypotheses.size(); ++i)
        if (i + 1 != *drop) out.hypotheses.push_back(s.hypotheses[i]);

    const std::size_t n = s.lines.size();
    std::vector<bool> uses_h(n + 1, false);
    std::vector<std::size_t> plain(n + 1, 0); // new index of χ_k
    std::vector<std::size_t> cond(n + 1, 0);  // new index of h -> χ_k

    auto conditional = [&](std::size_t k) {
        if (cond[k] != 0) return cond[k];
        const Formula& chi = s.formula(k);
        std::size_t weaken = out.add(Formula::implies(chi, Formula::implies(h, chi)), Justification::taut());
        cond[k] = out.add(Formula::implies(h, chi), Justification::mp(plain[k], weaken));
        return cond[k];
    };

    for (std::size_t k = 1; k <= n; ++k) {
        const Line& line = s.lines[k - 1];
        const Justification& j = line.just;
        if (j.rule == Rule::Hyp && j.first == *drop) {
            uses_h[k] = true;
            cond[k] = out.add(Formula::implies(h, h), Justification::taut());
            continue;
        }
        if (j.rule == Rule::MP && (uses_h[j.first] || uses_h[j.second])) {
            uses_h[k] = true;
            const Formula& a = s.formula(j.first);
            const Formula& b = line.formula;
            std::size_t ha = conditional(j.first);
            std::size_t hab = conditional(j.second);
            Formula h_ab = Formula::implies(h, Formula::implies(a, b));
            Formula ha_hb = Formula::implies(Formula::implies(h, a), Formula::implies(h, b));
            std::size_t dist = out.add(Formula::implies(h_ab, ha_hb), Justification::taut());
            std::size_t mid = out.add(ha_hb, Justification::mp(hab, dist));
            cond[k] = out.add(Formula::implies(h, b), Justification::mp(ha, mid));
            continue;
        }
        Justification copy = j;
        if (j.rule == Rule::Hyp && j.first > *drop) --copy.first;
        if (j.rule == Rule::MP) {
            copy.first = plain[j.first];
            copy.second = plain[j.second];
        }
        if (j.rule == Rule::Nec) copy.first = plain[j.first];
        plain[k] = out.add(line.formula, copy);
    }
    std::size_t last = conditional(n);
    if (last != out.lines.size()) {
        // h -> ψ was built early for a later line; restate it at the end.
        const Formula goal = Formula::implies(h, s.conclusion());
        std::size_t same = out.add(Formula::implies(goal, goal), Justification::taut());
        out.add(goal, Justification::mp(last, same));
    }
    return out;
}

/// Rescales every formula, hypothesis and necessitation budget by 1/mu.
inline Script divide_script(const Script& s, const Rational& mu) {
    Script out;
    for (const auto& h : s.hypotheses) out.hypotheses.push_back(divide(h, mu));
    for (const auto& line : s.lines) {
        Justification j = line.just;
        if (j.rule == Rule::Nec) j.budget = divide(j.budget, mu);
        out.lines.push_back(Line{line.index, divide(line.formula, mu), std::move(j)});
    }
    return out;
}

/// From a script proving φ1,…,φn ⊢ ψ, derives [C1]_{x1}φ1,…,[Cn]_{xn}φn ⊢
/// [C1∪…∪Cn]_{x1∪…∪xn}ψ. Each Ci is the domain of xi.
inline Script gen_superdistributivity(const Script& premise, const std::vector<Budget>& budgets) {
    detail::require_valid(premise, "premise script");
    const std::size_t n = premise.hypotheses.size();
    if (budgets.size() != n)
        fail("E-NOT-VALID", "premise has " + std::to_string(n) + " hypotheses but " + std::to_string(budgets.size()) +
                                " budgets were given");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (const auto& [agent, _] : budgets[i])
                if (budgets[k].count(agent))
                    fail("E-OVERLAP", "agent " + agent + " belongs to coalitions " + std::to_string(i + 1) + " and " +
                                          std::to_string(k + 1));

    Script theorem = premise;
    for (std::size_t i = n; i-- > 0;) theorem = deduction_transform(theorem, premise.hypotheses[i]);

    Script out;
    for (std::size_t i = 0; i < n; ++i) out.hypotheses.push_back(Formula::modal(budgets[i], premise.hypotheses[i]));
    out.lines = theorem.lines;

    Budget joint;
    Formula rest = out.conclusion(); // φ_{i}→(…→ψ) still to be consumed
    std::size_t have = out.add(Formula::modal(joint, rest), Justification::nec(joint, out.lines.size()));
    for (std::size_t i = 0; i < n; ++i) {
        const Formula phi = rest.lhs();
        rest = rest.rhs();
        Budget next = joint;
        next.insert(budgets[i].begin(), budgets[i].end());
        Formula hyp = Formula::modal(budgets[i], phi);
        Formula goal = Formula::modal(next, rest);
        std::size_t coop = out.add(Formula::implies(out.formula(have), Formula::implies(hyp, goal)),
                                   Justification::axiom_of(AxiomName::Coop));
        std::size_t step = out.add(Formula::implies(hyp, goal), Justification::mp(have, coop));
        std::size_t given = out.add(hyp, Justification::hyp(i + 1));
        have = out.add(goal, Justification::mp(given, step));
        joint = std::move(next);
    }
    return out;
}

/// ⊢ [C]_x body → [D]_y body for C ⊆ D and x ≤_C y, where C and D are the
/// domains of x and y.
inline Script gen_supermonotonicity(const Budget& x, const Budget& y, const Formula& body) {
    Budget extra = y; // y restricted to D \ C
    for (const auto& [agent, value] : x) {
        auto it = y.find(agent);
        if (it == y.end()) fail("E-NOT-SUBSET", "agent " + agent + " is not in the larger coalition");
        if (value > it->second)
            fail("E-BUDGET-ORDER", "budget " + to_string(value) + " of " + agent + " exceeds " + to_string(it->second));
        extra.erase(agent);
    }
    const Formula small = Formula::modal(x, body);
    const Formula large = Formula::modal(y, body);
    Script out;
    if (extra.empty()) {
        out.add(Formula::implies(small, large), Justification::axiom_of(AxiomName::Mono));
        return out;
    }
    Budget joint = x;
    joint.insert(extra.begin(), extra.end());
    const Formula middle = Formula::modal(joint, body);

    std::size_t same = out.add(Formula::implies(body, body), Justification::taut());
    std::size_t nec = out.add(Formula::modal(extra, out.formula(same)), Justification::nec(extra, same));
    std::size_t coop = out.add(Formula::implies(out.formula(nec), Formula::implies(small, middle)),
                               Justification::axiom_of(AxiomName::Coop));
    std::size_t first = out.add(Formula::implies(small, middle), Justification::mp(nec, coop));
    std::size_t mono = out.add(Formula::implies(middle, large), Justification::axiom_of(AxiomName::Mono));
    Formula chain = Formula::implies(Formula::implies(middle, large), Formula::implies(small, large));
    std::size_t syll = out.add(Formula::implies(out.formula(first), chain), Justification::taut());
    std::size_t half = out.add(chain, Justification::mp(first, syll));
    out.add(Formula::implies(small, large), Justification::mp(mono, half));
    return out;
}

} // namespace disco

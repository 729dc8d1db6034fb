#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "disco/error.hpp"
#include "disco/formula.hpp"
#include "disco/parse.hpp"
#include "disco/rational.hpp"

namespace disco {

enum class Rule { Taut, Axiom, Hyp, MP, Nec };
enum class AxiomName { Refl, Coop, Mono, Trans };

inline const char* to_string(AxiomName a) {
    switch (a) {
    case AxiomName::Refl: return "Refl";
    case AxiomName::Coop: return "Coop";
    case AxiomName::Mono: return "Mono";
    case AxiomName::Trans: return "Trans";
    }
    return "?";
}

inline std::optional<AxiomName> parse_axiom_name(std::string_view s) {
    if (s == "Refl") return AxiomName::Refl;
    if (s == "Coop") return AxiomName::Coop;
    if (s == "Mono") return AxiomName::Mono;
    if (s == "Trans") return AxiomName::Trans;
    return std::nullopt;
}

/// Why a line holds. Line and hypothesis references are 1-based.
struct Justification {
    Rule rule = Rule::Taut;
    AxiomName axiom = AxiomName::Refl; // Axiom
    std::size_t first = 0;             // Hyp: hypothesis; MP: minor premise; Nec: premise
    std::size_t second = 0;            // MP: major premise (first -> this)
    Budget budget;                     // Nec: modality introduced; its keys are the coalition

    static Justification taut() { return {}; }
    static Justification axiom_of(AxiomName a) { return {Rule::Axiom, a, 0, 0, {}}; }
    static Justification hyp(std::size_t k) { return {Rule::Hyp, AxiomName::Refl, k, 0, {}}; }
    static Justification mp(std::size_t minor, std::size_t major) { return {Rule::MP, AxiomName::Refl, minor, major, {}}; }
    static Justification nec(Budget b, std::size_t premise) { return {Rule::Nec, AxiomName::Refl, premise, 0, std::move(b)}; }

    friend bool operator==(const Justification&, const Justification&) = default;
};

struct Line {
    std::size_t index = 0;
    Formula formula;
    Justification just;
};

/// A derivation of its last line from the (possibly empty) hypotheses.
struct Script {
    std::vector<Formula> hypotheses;
    std::vector<Line> lines;

    std::size_t add(Formula f, Justification j) {
        lines.push_back(Line{lines.size() + 1, std::move(f), std::move(j)});
        return lines.size();
    }
    const Formula& formula(std::size_t index) const { return lines.at(index - 1).formula; }
    const Formula& conclusion() const {
        if (lines.empty()) fail("E-NOT-VALID", "script has no lines");
        return lines.back().formula;
    }
};

struct ProofError {
    std::size_t line = 0;
    std::string code;
    std::string message;
};

struct Report {
    bool ok = true;
    std::optional<ProofError> first_error;
    /// theorem[k-1]: line k was derived without any hypothesis.
    std::vector<bool> theorem;
};

// ---------------------------------------------------------------------------
// Tautologies

namespace detail {

inline void collect_atoms(const Formula& f, std::map<std::string, std::size_t>& atoms) {
    switch (f.kind()) {
    case Formula::Kind::Var:
    case Formula::Kind::Modal: atoms.emplace(render(f), atoms.size()); return;
    case Formula::Kind::Not: collect_atoms(f.sub(), atoms); return;
    case Formula::Kind::Implies:
        collect_atoms(f.lhs(), atoms);
        collect_atoms(f.rhs(), atoms);
        return;
    }
}

// Flattened formula: postfix program over atom indices.
struct Program {
    enum Op : std::uint8_t { Atom, Neg, Imp };
    std::vector<std::pair<Op, std::size_t>> code;
};

inline void compile(const Formula& f, const std::map<std::string, std::size_t>& atoms, Program& out) {
    switch (f.kind()) {
    case Formula::Kind::Var:
    case Formula::Kind::Modal: out.code.emplace_back(Program::Atom, atoms.at(render(f))); return;
    case Formula::Kind::Not:
        compile(f.sub(), atoms, out);
        out.code.emplace_back(Program::Neg, 0);
        return;
    case Formula::Kind::Implies:
        compile(f.lhs(), atoms, out);
        compile(f.rhs(), atoms, out);
        out.code.emplace_back(Program::Imp, 0);
        return;
    }
}

} // namespace detail

inline constexpr std::size_t kMaxTautologyAtoms = 20;

/// Truth-table check; variables and maximal modal subformulas are the atoms.
inline bool is_tautology(const Formula& f) {
    std::map<std::string, std::size_t> atoms;
    detail::collect_atoms(f, atoms);
    if (atoms.size() > kMaxTautologyAtoms)
        fail("E-TOO-MANY-ATOMS", std::to_string(atoms.size()) + " atoms exceed the limit of " +
                                     std::to_string(kMaxTautologyAtoms));
    detail::Program prog;
    detail::compile(f, atoms, prog);
    std::vector<bool> stack;
    stack.reserve(prog.code.size());
    const std::uint64_t rows = std::uint64_t{1} << atoms.size();
    for (std::uint64_t row = 0; row < rows; ++row) {
        stack.clear();
        for (const auto& [op, arg] : prog.code) {
            if (op == detail::Program::Atom) {
                stack.push_back((row >> arg) & 1U);
            } else if (op == detail::Program::Neg) {
                stack.back() = !stack.back();
            } else {
                bool rhs = stack.back();
                stack.pop_back();
                stack.back() = !stack.back() || rhs;
            }
        }
        if (!stack.back()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Axiom schemas

/// [C]_x φ → φ; [C]_x(φ→ψ) → ([D]_y φ → [C∪D]_{x∪y} ψ) with C∩D=∅;
/// [C]_x φ → [C]_y φ with x ≤_C y; [C]_x φ → [C]_x [C]_x φ.
inline bool verify_axiom_instance(AxiomName name, const Formula& f) {
    if (!f.is_implies()) return false;
    const Formula a = f.lhs();
    const Formula b = f.rhs();
    switch (name) {
    case AxiomName::Refl: return a.is_modal() && a.sub() == b;
    case AxiomName::Mono:
        return a.is_modal() && b.is_modal() && a.coalition() == b.coalition() && a.sub() == b.sub() &&
               budget_leq(a.budget(), b.budget());
    case AxiomName::Trans: return a.is_modal() && b.is_modal() && b.budget() == a.budget() && b.sub() == a;
    case AxiomName::Coop: {
        if (!a.is_modal() || !a.sub().is_implies() || !b.is_implies()) return false;
        const Formula d = b.lhs();
        const Formula e = b.rhs();
        if (!d.is_modal() || !e.is_modal()) return false;
        for (const auto& [agent, _] : a.budget())
            if (d.budget().count(agent)) return false;
        Budget joint = a.budget();
        joint.insert(d.budget().begin(), d.budget().end());
        return d.sub() == a.sub().lhs() && e.sub() == a.sub().rhs() && e.budget() == joint;
    }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Kernel

/// Checks every line in order and stops at the first error. Necessitation is
/// admitted only on lines whose derivation uses no hypothesis, which makes
/// one checker serve both plain theoremhood and derivability from
/// assumptions by Modus Ponens alone.
inline Report verify_script(const Script& s) {
    Report r;
    auto error = [&](std::size_t line, std::string code, std::string message) {
        r.ok = false;
        r.first_error = ProofError{line, std::move(code), std::move(message)};
        return r;
    };
    for (std::size_t k = 1; k <= s.lines.size(); ++k) {
        const Line& line = s.lines[k - 1];
        const Justification& j = line.just;
        if (line.index != k)
            return error(k, "E-FWD-REF", "line numbered " + std::to_string(line.index) + " in position " + std::to_string(k));
        bool theorem = true;
        switch (j.rule) {
        case Rule::Taut: {
            bool ok = false;
            try {
                ok = is_tautology(line.formula);
            } catch (const Error& e) {
                return error(k, "E-TAUT", e.what());
            }
            if (!ok) return error(k, "E-TAUT", render(line.formula) + " is not a propositional tautology");
            break;
        }
        case Rule::Axiom:
            if (!verify_axiom_instance(j.axiom, line.formula))
                return error(k, "E-AXIOM", render(line.formula) + " is not an instance of " + to_string(j.axiom));
            break;
        case Rule::Hyp:
            if (j.first < 1 || j.first > s.hypotheses.size())
                return error(k, "E-HYP-RANGE", "hypothesis " + std::to_string(j.first) + " does not exist");
            if (!(s.hypotheses[j.first - 1] == line.formula))
                return error(k, "E-HYP-MISMATCH", "line does not restate hypothesis " + std::to_string(j.first));
            theorem = false;
            break;
        case Rule::MP: {
            if (j.first < 1 || j.first >= k || j.second < 1 || j.second >= k)
                return error(k, "E-FWD-REF", "modus ponens must cite earlier lines");
            const Formula& major = s.lines[j.second - 1].formula;
            if (!major.is_implies() || !(major.lhs() == s.lines[j.first - 1].formula) || !(major.rhs() == line.formula))
                return error(k, "E-MP-SHAPE",
                             "line " + std::to_string(j.second) + " is not (line " + std::to_string(j.first) + " -> this line)");
            theorem = r.theorem[j.first - 1] && r.theorem[j.second - 1];
            break;
        }
        case Rule::Nec: {
            if (j.first < 1 || j.first >= k) return error(k, "E-FWD-REF", "necessitation must cite an earlier line");
            if (!line.formula.is_modal() || line.formula.budget() != j.budget ||
                !(line.formula.sub() == s.lines[j.first - 1].formula))
                return error(k, "E-NEC-SHAPE",
                             "line is not " + render(j.budget) + " applied to line " + std::to_string(j.first));
            if (!r.theorem[j.first - 1])
                return error(k, "E-NEC-SCOPE",
                             "necessitation applied to line " + std::to_string(j.first) + ", which depends on hypotheses");
            break;
        }
        }
        r.theorem.push_back(theorem);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Text format
//
//   # comment
//   hyp: <formula>
//   N: <formula> ; taut | axiom Refl|Coop|Mono|Trans | hyp K | mp I J | nec [a:q, ...] I

inline std::string render(const Justification& j) {
    switch (j.rule) {
    case Rule::Taut: return "taut";
    case Rule::Axiom: return std::string("axiom ") + to_string(j.axiom);
    case Rule::Hyp: return "hyp " + std::to_string(j.first);
    case Rule::MP: return "mp " + std::to_string(j.first) + " " + std::to_string(j.second);
    case Rule::Nec: return "nec " + render(j.budget) + " " + std::to_string(j.first);
    }
    return {};
}

inline std::string render(const Script& s) {
    std::string out;
    for (const auto& h : s.hypotheses) out += "hyp: " + render(h) + "\n";
    for (const auto& line : s.lines)
        out += std::to_string(line.index) + ": " + render(line.formula) + " ; " + render(line.just) + "\n";
    return out;
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::size_t parse_index(const std::string& token, std::size_t lineno) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        fail("E-SCRIPT-SYNTAX", "line " + std::to_string(lineno) + ": expected a number, found '" + token + "'");
    return std::stoul(token);
}

inline Justification parse_justification(const std::string& text, std::size_t lineno) {
    std::istringstream in(text);
    std::string head;
    in >> head;
    auto word = [&] {
        std::string w;
        if (!(in >> w)) fail("E-SCRIPT-SYNTAX", "line " + std::to_string(lineno) + ": incomplete justification");
        return w;
    };
    auto done = [&] {
        std::string rest;
        if (in >> rest) fail("E-SCRIPT-SYNTAX", "line " + std::to_string(lineno) + ": trailing '" + rest + "'");
    };
    Justification j;
    if (head == "taut") {
        j = Justification::taut();
    } else if (head == "axiom") {
        auto name = parse_axiom_name(word());
        if (!name) fail("E-SCRIPT-SYNTAX", "line " + std::to_string(lineno) + ": unknown axiom");
        j = Justification::axiom_of(*name);
    } else if (head == "hyp") {
        j = Justification::hyp(parse_index(word(), lineno));
    } else if (head == "mp") {
        std::size_t minor = parse_index(word(), lineno);
        j = Justification::mp(minor, parse_index(word(), lineno));
    } else if (head == "nec") {
        auto open = text.find('['), close = text.find(']');
        if (open == std::string::npos || close == std::string::npos || close < open)
            fail("E-SCRIPT-SYNTAX", "line " + std::to_string(lineno) + ": nec needs a bracketed budget");
        Formula probe = parse_formula(text.substr(open, close - open + 1) + " p0");
        std::istringstream tail(text.substr(close + 1));
        std::string premise, rest;
        tail >> premise;
        if (tail >> rest) fail("E-SCRIPT-SYNTAX", "line " + std::to_string(lineno) + ": trailing '" + rest + "'");
        return Justification::nec(probe.budget(), parse_index(premise, lineno));
    } else {
        fail("E-SCRIPT-SYNTAX", "line " + std::to_string(lineno) + ": unknown justification '" + head + "'");
    }
    done();
    return j;
}

} // namespace detail

inline Script parse_script(std::string_view text) {
    Script s;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        try {
            if (line.rfind("hyp:", 0) == 0) {
                if (!s.lines.empty())
                    fail("E-SCRIPT-SYNTAX", "line " + std::to_string(lineno) + ": hypotheses must precede proof lines");
                s.hypotheses.push_back(parse_formula(line.substr(4)));
                continue;
            }
            auto colon = line.find(':');
            auto semi = line.rfind(';');
            if (colon == std::string::npos || semi == std::string::npos || semi < colon)
                fail("E-SCRIPT-SYNTAX", "line " + std::to_string(lineno) + ": expected 'N: formula ; justification'");
            std::size_t index = detail::parse_index(detail::trim(line.substr(0, colon)), lineno);
            Formula f = parse_formula(line.substr(colon + 1, semi - colon - 1));
            s.lines.push_back(Line{index, f, detail::parse_justification(detail::trim(line.substr(semi + 1)), lineno)});
        } catch (const Error& e) {
            if (e.code() == "E-SCRIPT-SYNTAX") throw;
            fail("E-SCRIPT-SYNTAX", "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (s.lines.empty()) fail("E-SCRIPT-SYNTAX", "script has no proof lines");
    return s;
}

inline Script load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("E-IO", "cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_script(buffer.str());
}

} // namespace disco

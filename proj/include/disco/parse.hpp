#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "disco/error.hpp"
#include "disco/formula.hpp"

namespace disco {

namespace detail {

// Recursive descent over the concrete grammar. Precedence, loosest first:
// '->' (right associative), '|', '&', then the prefix operators '!' and
// '[...]'. Sugar is expanded on the spot so callers only ever see the core
// connectives.
class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    Formula parse_all() {
        Formula f = implication();
        skip_space();
        if (pos_ != text_.size()) expected("end of input");
        return f;
    }

private:
    Formula implication() {
        Formula lhs = disjunction();
        if (consume("->")) return Formula::implies(lhs, implication());
        return lhs;
    }

    Formula disjunction() {
        Formula f = conjunction();
        while (consume("|")) f = Formula::implies(Formula::negation(f), conjunction());
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (consume("&")) f = Formula::negation(Formula::implies(f, Formula::negation(unary())));
        return f;
    }

    Formula unary() {
        skip_space();
        if (consume("!")) return Formula::negation(unary());
        if (peek() == '[') {
            Budget budget = modality();
            return Formula::modal(std::move(budget), unary());
        }
        if (consume("(")) {
            Formula inner = implication();
            if (!consume(")")) expected("')'");
            return inner;
        }
        std::string word = identifier();
        if (word.empty()) expected("formula");
        if (word == "true") return top();
        if (word == "false") return Formula::negation(top());
        return Formula::var(word);
    }

    Budget modality() {
        consume("[");
        Budget budget;
        if (consume("]")) return budget;
        do {
            skip_space();
            std::size_t at = pos_;
            std::string agent = identifier();
            if (agent.empty()) expected("agent name");
            if (!consume(":")) expected("':'");
            Rational value = rational();
            if (value < 0)
                fail("E-NEG-BUDGET",
                     "negative budget " + to_string(value) + " for agent " + agent + " at position " + std::to_string(at));
            if (!budget.emplace(agent, value).second)
                fail("E-DUP-AGENT", "agent " + agent + " repeated in one modality at position " + std::to_string(at));
        } while (consume(","));
        if (!consume("]")) expected("',' or ']'");
        return budget;
    }

    Rational rational() {
        skip_space();
        std::size_t start = pos_;
        if (peek() == '-') ++pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
            ++pos_;
        if (pos_ == start) expected("rational");
        try {
            return parse_rational(text_.substr(start, pos_ - start));
        } catch (const Error&) {
            pos_ = start;
            expected("rational");
        }
    }

    std::string identifier() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    bool consume(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) != token) return false;
        pos_ += token.size();
        return true;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void expected(const std::string& what) {
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
        fail("E-SYNTAX", "at position " + std::to_string(pos_) + ": expected " + what + ", found " + found);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse_all(); }

} // namespace disco

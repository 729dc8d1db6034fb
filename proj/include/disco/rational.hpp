#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "disco/error.hpp"

namespace disco {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "int" or "int/posint" (optional leading '-', no spaces).
inline Rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    bool negative = false;
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!digits(num) || !digits(den))
        fail("E-SYNTAX", "malformed rational '" + std::string(text) + "'");
    Integer n{std::string(num)};
    Integer d{std::string(den)};
    if (d == 0) fail("E-SYNTAX", "zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    return negative ? Rational(-r) : r;
}

/// Lowest terms, "n" for integers and "n/d" otherwise.
inline std::string to_string(const Rational& r) {
    const Integer& d = boost::multiprecision::denominator(r);
    std::string out = boost::multiprecision::numerator(r).str();
    if (d != 1) out += "/" + d.str();
    return out;
}

inline Rational pow(const Rational& base, unsigned exponent) {
    Rational out = 1;
    for (unsigned i = 0; i < exponent; ++i) out *= base;
    return out;
}

inline void require_discount(const Rational& gamma) {
    if (gamma <= 0 || gamma >= 1)
        fail("E-GAMMA", "discount factor must lie in (0,1), got " + to_string(gamma));
}

} // namespace disco

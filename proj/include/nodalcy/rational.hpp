#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace nodalcy {

// GMP-backed exact arithmetic. mpq_rational keeps values canonical
// (lowest terms, positive denominator), which is exactly the Rational
// contract; no floating point anywhere in the exact layer.
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Accepts "a" or "a/b" with optional leading '-', arbitrary precision.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&]() -> void { fail(errc::schema_error, "malformed rational '" + text + "'"); };
    if (text.empty()) bad();
    auto slash = text.find('/');
    std::string num = text.substr(0, slash == std::string::npos ? text.size() : slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto digits_only = [](const std::string& s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (!digits_only(num, true) || !digits_only(den, false)) bad();
    Integer n(num), d(den);
    if (d == 0) fail(errc::schema_error, "zero denominator in '" + text + "'");
    return Rational(n) / Rational(d);
}

// Canonical "num/den" rendering, denominator always present and positive.
inline std::string to_fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// C(a, b) with the grid convention: 0 unless 0 <= b <= a.
inline Integer binomial(long long a, long long b) {
    if (a < 0 || b < 0 || b > a) return Integer(0);
    if (b > a - b) b = a - b;
    Integer result(1);
    for (long long i = 1; i <= b; ++i) {
        result *= Integer(a - b + i);
        result /= Integer(i);  // exact at every step
    }
    return result;
}

}  // namespace nodalcy

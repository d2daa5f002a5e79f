#pragma once

// Exact rational arithmetic used by the parameter engine. All parameter
// formulas are polynomial identities, so everything is kept as
// arbitrary-precision rationals until the numeric layer needs doubles.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace csgn {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "n", "n/d", or a decimal string like "2.8" (read as the exact
// fraction 28/10). Throws std::invalid_argument on malformed input.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    auto bad = [&]() -> std::invalid_argument {
        return std::invalid_argument("malformed rational literal: '" + s + "'");
    };

    std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw bad();
        try {
            Rational r(BigInt{num}, BigInt{den});
            return r;
        } catch (const std::exception&) {
            throw bad();
        }
    }

    std::size_t dot = s.find('.');
    if (dot == std::string::npos) {
        try {
            return Rational(BigInt(s));
        } catch (const std::exception&) {
            throw bad();
        }
    }

    std::string ip = s.substr(0, dot);
    std::string fp = s.substr(dot + 1);
    bool neg = false;
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) {
        neg = ip[0] == '-';
        ip = ip.substr(1);
    }
    if (ip.empty() && fp.empty()) throw bad();
    for (char c : ip)
        if (c < '0' || c > '9') throw bad();
    for (char c : fp)
        if (c < '0' || c > '9') throw bad();
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt n = (ip.empty() ? BigInt(0) : BigInt(ip)) * scale +
               (fp.empty() ? BigInt(0) : BigInt(fp));
    Rational r(n, scale);
    return neg ? Rational(-r) : r;
}

// "num/den" with den omitted when 1; exact, never a float.
inline std::string rational_to_string(const Rational& r) {
    std::string num = numerator(r).str();
    if (denominator(r) == 1) return num;
    return num + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace csgn

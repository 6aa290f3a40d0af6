#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace invlip {

/// Exact rational scalar used for every distance and function value.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using RationalVector = std::vector<Rational>;

/// Parses "p", "p/q" or a finite decimal such as "-0.25". Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string to_string(const Rational& value);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

inline Rational max_abs(const RationalVector& values) {
    Rational best = 0;
    for (const auto& v : values) {
        if (abs(v) > best) best = abs(v);
    }
    return best;
}

}  // namespace invlip

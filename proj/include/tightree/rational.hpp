#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace tightree {

/// Exact rational number, always reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

/// Largest integer not exceeding q.
BigInt floor(const Rational& q);

/// "num/den", or just "num" when the denominator is 1. Never a decimal.
std::string to_string(const Rational& q);

/// Parses "a", "-a" or "a/b".
Rational parse_rational(const std::string& text);

} // namespace tightree

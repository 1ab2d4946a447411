#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dispgrid {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// numerator / 2^exponent, exactly.
Rational dyadic(const BigInt& numerator, unsigned exponent);

/// 2^exponent as an exact integer.
BigInt pow2(unsigned exponent);

double to_double(const Rational& r);
long double to_long_double(const Rational& r);

/// "a/b" with the fraction in lowest terms, or "a" for integers.
std::string to_string(const Rational& r);

/// Parses "a", "a/b" or a finite decimal literal ("0.3", "1e-2") as an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace dispgrid

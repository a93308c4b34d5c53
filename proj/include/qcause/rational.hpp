#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace qcause {

// All probabilities, expectations and aggregate values are exact rationals;
// decimals exist only at the rendering boundary.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational &q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational &q) { return boost::multiprecision::denominator(q); }

// 2^k as a rational, used for uniform world counts.
Rational pow2_rational(unsigned k);

double to_double(const Rational &q);

// "p/q", or just "p" when the denominator is 1.
std::string format_fraction(const Rational &q);

// Fixed-point decimal with `places` digits after the point, rounding
// half away from zero. format_decimal(21/32, 6) == "0.656250".
std::string format_decimal(const Rational &q, int places);

// Shortest decimal rendering with `digits` significant digits (printf %g
// semantics); used for correlation coefficients.
std::string format_significant(double x, int digits);

// Parses "450", "-100", "112.5" or "3/4" into an exact rational.
std::optional<Rational> parse_rational(const std::string &text);

} // namespace qcause

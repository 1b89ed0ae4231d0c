#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace trafficflow {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

// Accepts "3", "3/10", "0.3" and "-1.25".
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_fraction(const Rational& r);

// Fixed-point decimal rounded half away from zero; exact integer arithmetic.
std::string to_decimal(const Rational& r, int digits = 6);

double to_double(const Rational& r);

}  // namespace trafficflow

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace credalkit {

/// Exact arbitrary-precision rational. All probability arithmetic in the
/// library is exact; floating point appears only when rendering output.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "3/20", "0.15", ".5" or "2" into the exact rational it denotes.
/// Decimal literals convert exactly (0.15 becomes 3/20, not a binary float).
Rational parse_rational(const std::string& text);

/// Canonical exact rendering: "3/20", integers without denominator ("0", "1").
std::string to_exact_string(const Rational& value);

/// Fixed four-decimal rendering, rounding halves away from zero ("0.5620").
std::string to_decimal4(const Rational& value);

} // namespace credalkit

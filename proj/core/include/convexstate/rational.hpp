#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace convexstate {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", integers and finite decimals ("0.25", "-1.5e-3") exactly.
/// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& r);

double to_double(const Rational& r);
std::vector<double> to_double(const RationalVector& v);

/// Exact binary expansion of a finite double.
Rational exact_rational(double x);

}  // namespace convexstate

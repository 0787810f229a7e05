#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace treeprod {

// Expression templates off so std::min/max and auto behave.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

// Accepts "p/q", integers and plain decimals ("-0.125"); exact.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// r^k for any integer k; r must be nonzero when k < 0.
Rational power(const Rational& r, int k);

double to_double(const Rational& q);

}  // namespace treeprod

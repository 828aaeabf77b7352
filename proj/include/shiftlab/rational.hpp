#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace shiftlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

// "num/den" in lowest terms ("3/4", "0/1", "2/1").
std::string rational_string(const Rational& r);

// Accepts "num/den", integers, and plain decimals ("0.25" -> 1/4).
Rational parse_rational(const std::string& text);

// Value formatted with 12 significant digits (CSV convention).
std::string decimal12(double x);

}  // namespace shiftlab

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace sumset {

using Rational = boost::multiprecision::cpp_rational;

// "num/den" (den omitted when 1 is NOT applied: always "num/den").
std::string to_fraction_string(const Rational& r);
// Accepts "7", "-3/4", "0.125", "1e-12".
Rational parse_rational(const std::string& text);
Rational make_rational(std::int64_t num, std::int64_t den = 1);
double to_double(const Rational& r);

} // namespace sumset

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace kohn {

// Exact rational used for exponents, slopes and directions.
// Compare only against Rational values: boost 1.74's mixed rational == int
// overload recurses forever under C++20 reversed-operator lookup.
using Rational = boost::rational<std::int64_t>;

// Always "p/q" (e.g. "4/1", "9/4", "-1/3"); never a decimal.
std::string to_string(const Rational& q);

// Accepts "p/q" or a bare integer "p". Throws kohn::Error(ParseError).
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) /
         static_cast<double>(q.denominator());
}

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace kohn

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace cantor {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 2^n as an exact integer.
BigInt pow2(unsigned n);

/// Parses `p/q`, `p` or a finite decimal such as `0.25`. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Lowest-terms text: `p/q`, or `p` when the denominator is 1.
std::string to_string(const Rational& r);

/// Closed interval with exact rational endpoints; lo == hi denotes a point.
struct Interval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool touches(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& iv);

}  // namespace cantor

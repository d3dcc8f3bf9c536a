#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sqmod {

using Rational = mpq_class;

/// Parses "p", "p/q", decimal literals ("0.46", "1e-5") and quotients of
/// decimals ("1/19.5"). The result is exact and canonical.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when q == 1).
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Closed interval of exact rationals.
struct RationalInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

}  // namespace sqmod

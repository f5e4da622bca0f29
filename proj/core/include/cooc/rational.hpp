#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace cooc {

using Rational = mpq_class;

// Parses "p/q" or an integer string; decimals are rejected (BadValue).
Rational parse_rational(const std::string& text);

// Canonical "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Round-half-away-from-zero rendering with exactly `digits` fractional digits.
std::string to_decimal(const Rational& r, unsigned digits);

Rational sum(const std::vector<Rational>& xs);

}  // namespace cooc

#pragma once

// Exact rational helpers over mpq_class. All values are kept canonical
// (den > 0, gcd(|num|, den) = 1); mpq_class arithmetic preserves this.

#include "bohr/numeric.hpp"

#include <span>
#include <string>

namespace bohr {

// Parses "p/q" or "p". Rejects zero denominators and malformed input.
Rational parse_rational(const std::string& text);

// Always writes the explicit "p/q" form, e.g. "3/1", "-5/6".
std::string format_rational(const Rational& x);

// Least common multiple of denominators; >= 1, equals 1 for integers.
Integer lcm_den(std::span<const Rational> values);
Integer lcm_den(const QVec& values);

inline Rational rat_add(const Rational& a, const Rational& b) { return a + b; }
inline Rational rat_mul(const Rational& a, const Rational& b) { return a * b; }

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

}  // namespace bohr

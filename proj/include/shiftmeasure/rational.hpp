#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace shiftmeasure {

using Rational = mpq_class;

// Accepts "p/q", integers, and decimal literals ("0.45", "-1.5e-3"); all are
// converted exactly. Throws std::invalid_argument naming the token.
Rational parse_rational(std::string_view token);

// Always "num/den" (integers become "n/1").
std::string format_rational(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }
inline double to_double(double value) { return value; }

// Exact binary value of a finite double.
Rational exact_rational(double value);

}  // namespace shiftmeasure

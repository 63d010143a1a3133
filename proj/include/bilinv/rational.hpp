#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bilinv {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p/q" or a pair of decimal strings. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
Rational parse_rational(std::string_view num, std::string_view den);

/// Canonical decimal form: "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& q);

inline std::string numerator_string(const Rational& q) { return q.get_num().get_str(); }
inline std::string denominator_string(const Rational& q) { return q.get_den().get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

Rational pow(const Rational& base, long exponent);

} // namespace bilinv

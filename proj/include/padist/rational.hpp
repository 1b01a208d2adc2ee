#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace padist {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "num/den" or "num" (optional leading '-'). The result is canonical.
/// Throws InputError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Parses a signed decimal integer.
Integer parse_integer(std::string_view text);

/// num/den in canonical form (GMP requires canonical operands); den != 0.
Rational fraction(const Integer& num, const Integer& den);

/// "num/den", or "num" when den = 1.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

/// base^exp for exp >= 0.
Integer ipow(long base, unsigned long exp);

/// base^exp for any sign of exp; base must be nonzero when exp < 0.
Rational rpow(const Rational& base, long exp);

}  // namespace padist

#pragma once

// Exact arithmetic used throughout the library. Coordinates, conformality
// factors and polynomial coefficients are all GMP rationals kept in canonical
// form (gcd(|num|, den) = 1, den > 0).

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hts {

using Integer = mpz_class;
using Rational = mpq_class;
using Coord = Rational;

/// Builds num/den in canonical form. Throws Error(SyntaxError) for den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "n" or "n/d" (optional leading sign on n). Throws Error(SyntaxError).
Rational parse_rational(std::string_view text);

/// "n" when the denominator is 1, otherwise "n/d". Never decimal.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Rational power(const Rational& base, unsigned exponent);
Integer binomial(unsigned n, unsigned k);
Integer factorial(unsigned n);

/// Scales a rational vector to the primitive integer vector on the same ray
/// (denominators cleared, entries divided by their gcd). Sign is preserved.
std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& values);

/// In-place: multiply by a positive rational so the entries become coprime
/// integers, then flip the sign so the first nonzero entry at or after
/// `sign_anchor` is positive. Zero vectors are left untouched.
void normalize_minimal_integer(std::vector<Rational>& values, std::size_t sign_anchor = 0);

}  // namespace hts

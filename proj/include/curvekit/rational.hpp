#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace curvekit {

using BigInt = mpz_class;
/// GMP rationals are kept canonical: positive denominator, gcd(num, den) = 1.
using BigRat = mpq_class;

/// Parses "p/q" or an integer literal, optionally signed. Decimals are rejected.
/// Throws CurveError(ParseError).
BigRat parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const BigRat& value);
std::string to_string(const BigInt& value);

}  // namespace curvekit

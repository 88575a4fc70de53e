#pragma once

// Dense univariate integer polynomials, used for exceptional-factor
// extraction and for splitting tangent cones into rational lines.

#include <optional>
#include <vector>

#include "curvekit/rational.hpp"

namespace curvekit::upoly {

/// Coefficients in ascending order of degree; trailing zeros are trimmed by
/// every function that returns a UPoly.
using UPoly = std::vector<BigInt>;

void trim(UPoly& p);
int degree(const UPoly& p);  // -1 for zero
BigRat evaluate(const UPoly& p, const BigRat& x);
UPoly mul(const UPoly& p, const UPoly& q);

/// Quotient of p by (lead*x - tail) when the division is exact over the
/// integers, nullopt otherwise. Requires lead != 0.
std::optional<UPoly> divide_by_linear(const UPoly& p, const BigInt& lead, const BigInt& tail);

/// Positive divisors of |n| (n != 0), ascending.
std::vector<BigInt> divisors(const BigInt& n);

/// Prime factorization of |n| > 1 as (prime, exponent) pairs, ascending.
std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n);

struct Root {
  BigRat value;
  unsigned multiplicity;
};

struct RootSplit {
  std::vector<Root> roots;  // descending by value
  UPoly remainder;          // p / prod (den*x - num)^mult, no rational roots
};

/// All rational roots of a nonzero p via the rational-root theorem, with
/// multiplicities found by repeated exact division.
RootSplit rational_roots(const UPoly& p);

}  // namespace curvekit::upoly

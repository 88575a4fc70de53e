#pragma once

// Text format for polynomials.
//
//   expression := term (('+' | '-') term)*
//   term       := signed (('*' signed) | factor)*      juxtaposition = product
//   signed     := '-' signed | factor
//   factor     := base ('^' integer)?
//   base       := integer | identifier | '(' expression ')'
//
// Unary minus applies to a whole factor, so "-x^2" is -(x^2). An identifier
// is one letter followed by digits or underscores; adjacent letters are
// separate variables ("xz^2" is x*z^2). A trailing "=0" is accepted.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "curvekit/poly.hpp"

namespace curvekit {

struct ExprNode {
  enum class Kind { Integer, Variable, Sum, Difference, Product, Power, Negation };

  Kind kind = Kind::Integer;
  BigInt value;                    // Integer
  std::string name;                // Variable
  std::uint32_t exponent = 0;      // Power
  std::vector<ExprNode> children;  // Sum/Difference/Product: 2, Power/Negation: 1
  std::size_t offset = 0;          // byte offset of the node's first token
};

/// Throws CurveError(ParseError) carrying the byte offset of the problem.
ExprNode parse(std::string_view text);

/// Exact expansion; throws VariableMismatch on variables other than u, v.
BivarPoly expand(const ExprNode& node, std::string_view var_u, std::string_view var_v);

/// Term order used by format(). Descending graded-lex is the default;
/// ascending prints tangent lines as "z-x" rather than "-x+z".
enum class TermOrder { Descending, Ascending };

std::string format(const BivarPoly& p, TermOrder order = TermOrder::Descending);

/// expand(parse(text)), exact.
BivarPoly parse_poly(std::string_view text, std::string_view var_u, std::string_view var_v);
/// normalize(parse_poly(text)): the canonical curve equation.
BivarPoly parse_curve(std::string_view text, std::string_view var_u, std::string_view var_v);

}  // namespace curvekit

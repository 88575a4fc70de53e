#include "curvekit/expr.hpp"

#include <cctype>
#include <limits>

#include "curvekit/errors.hpp"

namespace curvekit {

namespace {

constexpr int kMaxNesting = 256;

enum class Tok { Integer, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

[[noreturn]] void fail(std::size_t offset, const std::string& what) {
  throw CurveError(Errc::ParseError, what, offset);
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c)) {
      while (i < s.size() && is_digit(s[i])) ++i;
      out.push_back({Tok::Integer, start, std::string(s.substr(start, i - start))});
      continue;
    }
    if (is_alpha(c)) {
      ++i;
      while (i < s.size() && (is_digit(s[i]) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, start, std::string(s.substr(start, i - start))});
      continue;
    }
    switch (c) {
      case '+': out.push_back({Tok::Plus, start, "+"}); break;
      case '-': out.push_back({Tok::Minus, start, "-"}); break;
      case '*': out.push_back({Tok::Star, start, "*"}); break;
      case '^': out.push_back({Tok::Caret, start, "^"}); break;
      case '(': out.push_back({Tok::LParen, start, "("}); break;
      case ')': out.push_back({Tok::RParen, start, ")"}); break;
      case '=': {
        std::size_t j = i + 1;
        while (j < s.size() && is_space(s[j])) ++j;
        if (j < s.size() && s[j] == '0') {
          ++j;
          while (j < s.size() && is_space(s[j])) ++j;
          if (j == s.size()) {
            out.push_back({Tok::End, start, ""});
            return out;
          }
        }
        fail(start, "only a trailing '=0' is accepted");
      }
      default:
        fail(start, "unexpected character");
    }
    ++i;
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ExprNode parse_all() {
    if (peek().kind == Tok::End) fail(peek().offset, "empty expression");
    ExprNode root = expression();
    if (peek().kind != Tok::End) fail(peek().offset, "unexpected '" + peek().text + "'");
    return root;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxNesting) fail(p.peek().offset, "nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
  };

  static ExprNode binary(ExprNode::Kind kind, ExprNode lhs, ExprNode rhs) {
    ExprNode n;
    n.kind = kind;
    n.offset = lhs.offset;
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
  }

  ExprNode expression() {
    DepthGuard guard(*this);
    ExprNode lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool plus = take().kind == Tok::Plus;
      ExprNode rhs = term();
      lhs = binary(plus ? ExprNode::Kind::Sum : ExprNode::Kind::Difference, std::move(lhs),
                   std::move(rhs));
    }
    return lhs;
  }

  ExprNode term() {
    ExprNode lhs = signed_factor();
    while (true) {
      const Tok k = peek().kind;
      if (k == Tok::Star) {
        take();
        lhs = binary(ExprNode::Kind::Product, std::move(lhs), signed_factor());
      } else if (k == Tok::Integer || k == Tok::Ident || k == Tok::LParen) {
        lhs = binary(ExprNode::Kind::Product, std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  ExprNode signed_factor() {
    if (peek().kind != Tok::Minus) return factor();
    DepthGuard guard(*this);
    ExprNode n;
    n.kind = ExprNode::Kind::Negation;
    n.offset = take().offset;
    n.children.push_back(signed_factor());
    return n;
  }

  ExprNode factor() {
    ExprNode b = base();
    if (peek().kind != Tok::Caret) return b;
    take();
    const Token& e = peek();
    if (e.kind != Tok::Integer) fail(e.offset, "exponent must be a non-negative integer literal");
    take();
    BigInt value(e.text, 10);
    if (value > std::numeric_limits<std::uint32_t>::max()) fail(e.offset, "exponent too large");
    ExprNode n;
    n.kind = ExprNode::Kind::Power;
    n.offset = b.offset;
    n.exponent = static_cast<std::uint32_t>(value.get_ui());
    n.children.push_back(std::move(b));
    return n;
  }

  ExprNode base() {
    const Token& t = peek();
    ExprNode n;
    n.offset = t.offset;
    switch (t.kind) {
      case Tok::Integer:
        n.kind = ExprNode::Kind::Integer;
        n.value = BigInt(t.text, 10);
        take();
        return n;
      case Tok::Ident:
        n.kind = ExprNode::Kind::Variable;
        n.name = t.text;
        take();
        return n;
      case Tok::LParen: {
        take();
        ExprNode inner = expression();
        if (peek().kind != Tok::RParen) fail(peek().offset, "expected ')'");
        take();
        return inner;
      }
      case Tok::End:
        fail(t.offset, "unexpected end of input");
      default:
        fail(t.offset, "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

BivarPoly expand_node(const ExprNode& n, const std::string& u, const std::string& v) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Integer: return BivarPoly::constant(u, v, n.value);
    case K::Variable: return BivarPoly::variable(u, v, n.name);
    case K::Sum: return add(expand_node(n.children[0], u, v), expand_node(n.children[1], u, v));
    case K::Difference:
      return sub(expand_node(n.children[0], u, v), expand_node(n.children[1], u, v));
    case K::Product:
      return mul(expand_node(n.children[0], u, v), expand_node(n.children[1], u, v));
    case K::Power: return pow(expand_node(n.children[0], u, v), n.exponent);
    case K::Negation: return negate(expand_node(n.children[0], u, v));
  }
  return BivarPoly(u, v);
}

void append_power(std::string& out, const std::string& name, std::uint32_t e) {
  if (e == 0) return;
  out += name;
  if (e > 1) out += "^" + std::to_string(e);
}

}  // namespace

ExprNode parse(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

BivarPoly expand(const ExprNode& node, std::string_view var_u, std::string_view var_v) {
  return expand_node(node, std::string(var_u), std::string(var_v));
}

std::string format(const BivarPoly& p, TermOrder order) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  auto emit = [&](const Monomial& m, const BigInt& c) {
    if (c < 0)
      out += "-";
    else if (!first)
      out += "+";
    first = false;
    BigInt mag = abs(c);
    if (m.degree() == 0 || mag != 1) out += mag.get_str();
    append_power(out, p.var_u(), m.eu);
    append_power(out, p.var_v(), m.ev);
  };
  if (order == TermOrder::Descending)
    for (const auto& [m, c] : p.terms()) emit(m, c);
  else
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) emit(it->first, it->second);
  return out;
}

BivarPoly parse_poly(std::string_view text, std::string_view var_u, std::string_view var_v) {
  return expand(parse(text), var_u, var_v);
}

BivarPoly parse_curve(std::string_view text, std::string_view var_u, std::string_view var_v) {
  return normalize(parse_poly(text, var_u, var_v));
}

}  // namespace curvekit

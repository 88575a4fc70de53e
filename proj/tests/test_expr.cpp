#include <doctest.h>

#include <random>

#include "curvekit/errors.hpp"
#include "curvekit/expr.hpp"
#include "test_support.hpp"

using namespace curvekit;

namespace {

std::optional<std::size_t> parse_error_offset(std::string_view text) {
  try {
    parse(text);
  } catch (const CurveError& e) {
    if (e.code() == Errc::ParseError) return e.offset();
    throw;
  }
  return std::nullopt;
}

bool parses(std::string_view text) {
  try {
    parse(text);
    return true;
  } catch (const CurveError&) {
    return false;
  }
}

BivarPoly terms(std::initializer_list<std::tuple<int, int, long>> list, const char* u = "x",
                const char* v = "y") {
  TermMap t;
  for (auto [i, j, c] : list)
    t[Monomial{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}] = c;
  return BivarPoly(u, v, std::move(t));
}

}  // namespace

TEST_CASE("textual equations") {
  CHECK(parse_poly("x^2+y^2-1", "x", "y") == terms({{2, 0, 1}, {0, 2, 1}, {0, 0, -1}}));
  CHECK(parse_poly("x^2+y^2-1=0", "x", "y") == parse_poly("x^2+y^2-1", "x", "y"));
  CHECK(parse_poly("(x-2)^2+y^2-4", "x", "y") == terms({{2, 0, 1}, {1, 0, -4}, {0, 2, 1}}));
  // frozen from an independent symbolic expansion
  CHECK(parse_poly("(x^2+y^2+x)^2-x^2-y^2=0", "x", "y") ==
        terms({{4, 0, 1}, {2, 2, 2}, {0, 4, 1}, {3, 0, 2}, {1, 2, 2}, {0, 2, -1}}));
  CHECK(parse_poly("3(x^2+y^2)^2+8x(3y^2-x^2)+6x^2+6y^2-1", "x", "y") ==
        terms({{4, 0, 3},
               {2, 2, 6},
               {0, 4, 3},
               {3, 0, -8},
               {1, 2, 24},
               {2, 0, 6},
               {0, 2, 6},
               {0, 0, -1}}));
  CHECK(parse_poly("0", "x", "y").is_zero());
}

TEST_CASE("implicit multiplication and unary minus") {
  CHECK(parse_poly("2x", "x", "y") == terms({{1, 0, 2}}));
  CHECK(parse_poly("x y", "x", "y") == terms({{1, 1, 1}}));
  CHECK(parse_poly("4x^3", "x", "y") == terms({{3, 0, 4}}));
  CHECK(parse_poly("xy^2", "x", "y") == terms({{1, 2, 1}}));
  CHECK(parse_poly("24xz^2", "x", "z") == terms({{1, 2, 24}}, "x", "z"));
  CHECK(parse_poly("(x+1)(x-1)", "x", "y") == terms({{2, 0, 1}, {0, 0, -1}}));
  CHECK(parse_poly("2*3x", "x", "y") == terms({{1, 0, 6}}));
  CHECK(parse_poly("-x^2", "x", "y") == terms({{2, 0, -1}}));
  CHECK(parse_poly("--x", "x", "y") == terms({{1, 0, 1}}));
  CHECK(parse_poly("x*-y", "x", "y") == terms({{1, 1, -1}}));
  CHECK(parse_poly("  x ^ 2  -  y ", "x", "y") == terms({{2, 0, 1}, {0, 1, -1}}));
  CHECK(parse_poly("x-y-1", "x", "y") == terms({{1, 0, 1}, {0, 1, -1}, {0, 0, -1}}));
  CHECK(parse_poly("x^0", "x", "y") == terms({{0, 0, 1}}));
  CHECK(parse_poly("123456789012345678901234567890x", "x", "y").coefficient({1, 0}) ==
        BigInt("123456789012345678901234567890"));
}

TEST_CASE("grammar boundaries") {
  CHECK(parse_error_offset("x^(2)") == std::size_t{2});
  CHECK(parse_error_offset("x^-1") == std::size_t{2});
  CHECK(parse_error_offset("x^y").has_value());
  CHECK(parse_error_offset("x^2.5").has_value());
  CHECK(parse_error_offset("").has_value());
  CHECK(parse_error_offset("x+").has_value());
  CHECK(parse_error_offset("(x").has_value());
  CHECK(parse_error_offset("x)").has_value());
  CHECK(parse_error_offset("x=1").has_value());
  CHECK(parse_error_offset("x=0=0").has_value());
  CHECK(parse_error_offset("sin(x)") == std::nullopt);  // s*i*n*(x): grammatical
  CHECK(parse_error_offset("x # y") == std::size_t{2});
  CHECK(parse_error_offset("x^99999999999").has_value());
  CHECK(parses("x = 0"));
  CHECK_FALSE(parses(std::string(300, '(') + "x" + std::string(300, ')')));
  CHECK(parses(std::string(100, '(') + "x" + std::string(100, ')')));
}

TEST_CASE("expand rejects foreign variables") {
  try {
    parse_poly("x+w", "x", "y");
    FAIL("expected VariableMismatch");
  } catch (const CurveError& e) {
    CHECK(e.code() == Errc::VariableMismatch);
  }
}

TEST_CASE("format") {
  CHECK(format(parse_curve("x^4+z^2-x^2", "x", "z")) == "x^4-x^2+z^2");
  CHECK(format(parse_curve("x^2-4x+y^2", "x", "y")) == "x^2+y^2-4x");
  CHECK(format(BivarPoly("x", "y")) == "0");
  CHECK(format(parse_poly("-1", "x", "y")) == "-1");
  CHECK(format(parse_poly("-x+3y", "x", "y")) == "-x+3y");
  CHECK(format(parse_poly("z-x", "x", "z"), TermOrder::Ascending) == "z-x");
  CHECK(format(parse_poly("z+x", "x", "z"), TermOrder::Ascending) == "z+x");
  CHECK(format(parse_poly("x^3y^2-2xy", "x", "y")) == "x^3y^2-2xy");
}

TEST_CASE("property: expand(parse(format(p))) == p") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = testing::random_poly(rng, "x", "t2", 12, 1000000, 15);
    const std::string text = format(p);
    REQUIRE_MESSAGE(parse_poly(text, "x", "t2") == p, text);
    REQUIRE(parse_poly(format(p, TermOrder::Ascending), "x", "t2") == p);
  }
}

TEST_CASE("property: parser never crashes on random bytes") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> len(0, 64), byte(0, 255);
  const std::string alphabet = "xy0123456789+-*^()= ";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  int accepted = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::string s(static_cast<std::size_t>(len(rng)), '\0');
    const bool grammar_biased = trial % 2 == 0;
    for (auto& c : s) c = grammar_biased ? alphabet[pick(rng)] : static_cast<char>(byte(rng));
    try {
      auto node = parse(s);
      ++accepted;
      try {
        expand(node, "x", "y");
      } catch (const CurveError& e) {
        REQUIRE((e.code() == Errc::VariableMismatch || e.code() == Errc::DegreeLimitExceeded));
      }
    } catch (const CurveError& e) {
      REQUIRE(e.code() == Errc::ParseError);
      REQUIRE(e.offset().has_value());
      REQUIRE(*e.offset() <= s.size());
    }
  }
  CHECK(accepted > 0);
}

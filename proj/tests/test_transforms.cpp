#include <doctest.h>

#include <random>

#include "curvekit/errors.hpp"
#include "curvekit/expr.hpp"
#include "curvekit/transforms.hpp"
#include "test_support.hpp"

using namespace curvekit;
using testing::eval_named;
using testing::random_rational;
using testing::rat_pow;

namespace {

BivarPoly C(const char* text, const char* u = "x", const char* v = "y") {
  return parse_curve(text, u, v);
}

TransformStep down(const char* pivot, const char* replaced, const char* nv, BigRat center,
                   bool strict = false) {
  return {TransformKind::BlowDown, pivot, replaced, nv, center, strict};
}

TransformStep up(const char* pivot, const char* replaced, const char* nv, BigRat center) {
  return {TransformKind::BlowUp, pivot, replaced, nv, center, false};
}

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const CurveError& e) {
    return e.code();
  }
  FAIL("expected a CurveError");
  return Errc::SchemaError;
}

// Expected forms, written out by hand.
const char* kEq1 = "x^2+y^2-1";
const char* kEq2 = "x^4+z^2-x^2";
const char* kEq4 = "x^2-4x+y^2";
const char* kEq5 = "x^4-4x^3+z^2";
const char* kEq6 = "x^6-12x^5+48x^4-64x^3+t^2";
const char* kEq7 = "(x^2+y^2+x)^2-x^2-y^2";
const char* kEq8 =
    "x^8+10x^7+40x^6+80x^5+2x^4z^2+80x^4+32x^3+10x^3z^2+15x^2z^2+4xz^2+z^4-4z^2";
const char* kEq9 = "3(x^2+y^2)^2+8x(3y^2-x^2)+6x^2+6y^2-1";
const char* kEq10 = "3x^2z^4+6x^2z^2+3x^2-6xz^4+24xz^2-2x+3z^4+6z^2-1";
const char* kEq11 = "3x^6-2x^5+6x^4t^2-x^4+24x^3t^2+3x^2t^4+6x^2t^2-6xt^4+3t^4";

// True when (pivot - a) divides f, decided by exact evaluation of each column.
bool axis_divides(const BivarPoly& f, const std::string& pivot, const BigRat& a) {
  const bool pu = f.var_u() == pivot;
  std::map<std::uint32_t, BigRat> col;
  for (const auto& [m, c] : f.terms()) {
    const auto pe = pu ? m.eu : m.ev;
    col[pu ? m.ev : m.eu] += c * rat_pow(a, pe);
  }
  for (const auto& [e, s] : col)
    if (s != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("blow_down reproduces the printed curves") {
  CHECK(blow_down(C(kEq1), down("x", "y", "z", 0)) == C(kEq2, "x", "z"));
  CHECK(blow_down(C(kEq4), down("x", "y", "z", 0)) == C(kEq5, "x", "z"));
  CHECK(blow_down(C(kEq5, "x", "z"), down("x", "z", "t", 4)) == C(kEq6, "x", "t"));
  CHECK(blow_down(C(kEq7), down("x", "y", "z", -2)) == C(kEq8, "x", "z"));
  CHECK(blow_down(C(kEq10, "x", "z"), down("x", "z", "t", 0)) == C(kEq11, "x", "t"));
}

TEST_CASE("blow_up reproduces the printed curves") {
  auto r = blow_up(C(kEq2, "x", "z"), up("x", "z", "y", 0));
  CHECK(r.proper == C(kEq1));
  CHECK(r.exceptional_multiplicity == 2);

  auto t = blow_up(C(kEq9), up("x", "y", "z", 1));
  CHECK(t.proper == C(kEq10, "x", "z"));
  CHECK(t.exceptional_multiplicity == 2);
}

TEST_CASE("transform edge cases") {
  // d = 0: only the variable name changes
  CHECK(blow_down(C("x^3-2x+1"), down("x", "y", "w", 5)) == C("x^3-2x+1", "x", "w"));
  CHECK(error_of([] { blow_up(C("x^2"), up("x", "y", "z", 0)); }) == Errc::DegenerateTransform);
  CHECK(error_of([] { blow_down(BivarPoly("x", "y"), down("x", "y", "z", 0)); }) ==
        Errc::DegreeOfZero);
  CHECK(error_of([] { blow_down(C(kEq1), down("x", "q", "z", 0)); }) == Errc::VariableMismatch);
  CHECK(error_of([] { blow_down(C(kEq1), down("x", "y", "x", 0)); }) == Errc::VariableMismatch);
  CHECK(error_of([] { blow_down(C(kEq1), down("x", "x", "z", 0)); }) == Errc::VariableMismatch);
}

TEST_CASE("strict blow-down strips the exceptional factor") {
  // raw blow-down of xy + x^2 - x at 0 is x(x^2 - x + z)
  const BivarPoly f = C("xy+x^2-x");
  const BivarPoly raw = blow_down(f, down("x", "y", "z", 0));
  CHECK(raw == C("x^3-x^2+xz", "x", "z"));
  CHECK(blow_down(f, down("x", "y", "z", 0, true)) == C("x^2-x+z", "x", "z"));
  auto [stripped, k] = strip_axis_factor(raw, "x", 0);
  CHECK(k == 1);
  CHECK(normalize(stripped) == C("x^2-x+z", "x", "z"));
}

TEST_CASE("pivot on the second variable") {
  // circle with roles swapped: pivot y, replace x
  const BivarPoly out = blow_down(C(kEq1), down("y", "x", "w", 0));
  CHECK(out.var_u() == "y");
  CHECK(out.var_v() == "w");
  CHECK(out == C("y^4+w^2-y^2", "y", "w"));
  auto back = blow_up(out, up("y", "w", "x", 0));
  CHECK(with_variables(back.proper, "y", "x", "x", "y") == C(kEq1));
  CHECK(back.exceptional_multiplicity == 2);
}

TEST_CASE("substitution identity on the printed cases") {
  struct Case {
    const char* f;
    const char* u;
    const char* v;
    TransformStep step;
  };
  const Case cases[] = {
      {kEq1, "x", "y", down("x", "y", "z", 0)},
      {kEq4, "x", "y", down("x", "y", "z", 0)},
      {kEq5, "x", "z", down("x", "z", "t", 4)},
      {kEq7, "x", "y", down("x", "y", "z", -2)},
      {kEq10, "x", "z", down("x", "z", "t", 0)},
  };
  std::mt19937_64 rng(17);
  for (const auto& c : cases) {
    const BivarPoly f = C(c.f, c.u, c.v);
    const BivarPoly h = blow_down(f, c.step);
    const int d = degree_in(f, c.step.replaced);
    std::optional<BigRat> ratio;
    int checked = 0;
    while (checked < 50) {
      const BigRat p = random_rational(rng, 20, 9), w = random_rational(rng, 20, 9);
      const BigRat lin = p - c.step.center;
      const BigRat rhs = rat_pow(lin, d) * eval_named(f, c.step.pivot, p, c.step.replaced, w);
      const BigRat lhs = eval_named(h, c.step.pivot, p, c.step.new_var, lin * w);
      if (rhs == 0) {
        REQUIRE(lhs == 0);
        continue;
      }
      BigRat r = lhs / rhs;
      r.canonicalize();
      if (!ratio) ratio = r;
      REQUIRE(r == *ratio);
      ++checked;
    }
    CHECK(*ratio > 0);
  }
}

TEST_CASE("blow-up reconstruction identity") {
  const BivarPoly f = C(kEq9);
  const auto r = blow_up(f, up("x", "y", "z", 1));
  std::mt19937_64 rng(23);
  std::optional<BigRat> ratio;
  for (int i = 0; i < 50; ++i) {
    const BigRat p = random_rational(rng, 20, 9), w = random_rational(rng, 20, 9);
    const BigRat lin = p - 1;
    const BigRat lhs = eval_named(f, "x", p, "y", lin * w);
    const BigRat rhs = rat_pow(lin, 2) * eval_named(r.proper, "x", p, "z", w);
    if (rhs == 0) continue;
    BigRat q = lhs / rhs;
    q.canonicalize();
    if (!ratio) ratio = q;
    REQUIRE(q == *ratio);
  }
  CHECK(*ratio > 0);
}

TEST_CASE("property: round trip on random curves") {
  std::mt19937_64 rng(31337);
  int tested = 0;
  while (tested < 200) {
    const bool pivot_u = tested % 2 == 0;
    BivarPoly f = normalize(testing::random_poly(rng, "x", "y", 8, 10000, 8));
    const std::string pivot = pivot_u ? "x" : "y";
    const std::string replaced = pivot_u ? "y" : "x";
    if (f.is_constant() || degree_in(f, replaced) == 0) continue;
    const BigRat a = random_rational(rng, 7, 5);
    if (axis_divides(f, pivot, a)) continue;

    const TransformStep bd{TransformKind::BlowDown, pivot, replaced, "w", a, false};
    const BivarPoly h = blow_down(f, bd);
    const TransformStep bu{TransformKind::BlowUp, pivot, "w", replaced, a, false};
    const auto back = blow_up(h, bu);
    const BivarPoly reordered = normalize(with_variables(back.proper, pivot, replaced, "x", "y"));
    REQUIRE_MESSAGE(reordered == f, format(f));
    REQUIRE(back.exceptional_multiplicity == degree_in(f, replaced));
    REQUIRE_FALSE(axis_divides(back.proper, pivot, a));
    ++tested;
  }
}

TEST_CASE("property: proper transform never carries the axis factor") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 200; ++trial) {
    const BivarPoly f = normalize(testing::random_poly(rng, "x", "y", 7, 100, 7));
    const BigRat a = random_rational(rng, 4, 3);
    try {
      const auto r = blow_up(f, up("x", "y", "z", a));
      REQUIRE_FALSE(axis_divides(r.proper, "x", a));
      REQUIRE(is_canonical(r.proper));
    } catch (const CurveError& e) {
      REQUIRE((e.code() == Errc::DegenerateTransform || e.code() == Errc::DegreeOfZero));
    }
  }
}

TEST_CASE("partial derivatives") {
  CHECK(partial_derivative(C(kEq1), "x") == C("x"));
  CHECK(derivative(C(kEq1), "x") == parse_poly("2x", "x", "y"));
  CHECK(partial_derivative(C(kEq5, "x", "z"), "z") == C("z", "x", "z"));
  // term-by-term: d/dx (x^4 + z^2 - x^2) = 4x^3 - 2x = 2(2x^3 - x)
  CHECK(derivative(C(kEq2, "x", "z"), "x") == parse_poly("4x^3-2x", "x", "z"));
  CHECK(partial_derivative(C(kEq2, "x", "z"), "x") == C("2x^3-x", "x", "z"));
  CHECK(error_of([] { partial_derivative(C(kEq1), "q"); }) == Errc::VariableMismatch);
}

TEST_CASE("singularity classification") {
  auto lem = is_singular(C(kEq2, "x", "z"), {0, 0});
  CHECK(lem.status == PointClass::Status::SingularPoint);
  CHECK(lem.multiplicity == 2);
  CHECK(is_singular(C(kEq1), {0, 1}).status == PointClass::Status::SmoothPoint);
  CHECK(is_singular(C(kEq1), {5, 5}).status == PointClass::Status::NotOnCurve);
  auto tri = is_singular(C(kEq9), {1, 0});
  CHECK(tri.status == PointClass::Status::SingularPoint);
  CHECK(tri.multiplicity == 2);
  CHECK(status_name(PointClass::Status::SmoothPoint) == "SmoothPoint");
}

TEST_CASE("property: singular iff both partials vanish") {
  std::mt19937_64 rng(4242);
  const char* curves[] = {kEq1, kEq4, kEq7, kEq9};
  for (const char* text : curves) {
    const BivarPoly f = C(text);
    const BivarPoly fx = derivative(f, "x"), fy = derivative(f, "y");
    // points on the curve: rational points found along rational lines through
    // known points, plus the known singular points
    std::vector<RationalPoint> pts = {{0, 0}, {-2, 0}, {1, 0}, {0, 1}, {0, -1}, {BigRat(3, 5), BigRat(4, 5)}};
    for (int i = 0; i < 20; ++i) pts.push_back({random_rational(rng, 5, 3), random_rational(rng, 5, 3)});
    for (const auto& pt : pts) {
      const auto cls = is_singular(f, pt);
      const bool on = evaluate(f, pt) == 0;
      REQUIRE((cls.status != PointClass::Status::NotOnCurve) == on);
      if (!on) continue;
      const bool grad_zero = evaluate(fx, pt) == 0 && evaluate(fy, pt) == 0;
      REQUIRE((cls.status == PointClass::Status::SingularPoint) == grad_zero);
    }
  }
}

TEST_CASE("tangent cones") {
  auto lem = tangent_cone(C(kEq2, "x", "z"), {0, 0});
  CHECK(lem.multiplicity == 2);
  REQUIRE(lem.lines.size() == 2);
  CHECK(format(lem.lines[0].line, TermOrder::Ascending) == "z-x");
  CHECK(format(lem.lines[1].line, TermOrder::Ascending) == "z+x");
  CHECK(lem.lines[0].multiplicity == 1);
  CHECK(lem.lines[1].multiplicity == 1);
  CHECK(lem.residual == C("1", "x", "z"));

  auto pir = tangent_cone(C(kEq5, "x", "z"), {0, 0});
  CHECK(pir.multiplicity == 2);
  REQUIRE(pir.lines.size() == 1);
  CHECK(format(pir.lines[0].line) == "z");
  CHECK(pir.lines[0].multiplicity == 2);

  auto card = tangent_cone(C(kEq7), {0, 0});
  CHECK(card.multiplicity == 2);
  REQUIRE(card.lines.size() == 1);
  CHECK(format(card.lines[0].line) == "y");
  CHECK(card.lines[0].multiplicity == 2);

  // tangent y = 1 at (0,1), centred at the point
  auto circ = tangent_cone(C(kEq1), {0, 1});
  CHECK(circ.multiplicity == 1);
  REQUIRE(circ.lines.size() == 1);
  CHECK(format(circ.lines[0].line) == "y");

  // x^2 + y^2 at the origin: no rational lines
  auto iso = tangent_cone(C("x^2+y^2"), {0, 0});
  CHECK(iso.lines.empty());
  CHECK(iso.residual == C("x^2+y^2"));

  CHECK(error_of([] { tangent_cone(C(kEq1), {0, 0}); }) == Errc::NotOnCurve);
}

TEST_CASE("property: tangent cone reconstructs the lowest part up to a scalar") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 150; ++trial) {
    // a curve through the origin with a planted product of lines as lowest part
    BivarPoly low = BivarPoly::constant("x", "y", 1);
    std::uniform_int_distribution<int> nlines(1, 4);
    const int n = nlines(rng);
    for (int i = 0; i < n; ++i) {
      TermMap t;
      t[{1, 0}] = testing::random_int(rng, 4);
      t[{0, 1}] = testing::random_int(rng, 4);
      BivarPoly line("x", "y", t);
      if (line.is_zero()) line = BivarPoly::variable("x", "y", "y");
      low = low * line;
    }
    if (trial % 3 == 0) low = low * C("x^2+y^2");
    BivarPoly f = low;
    const int m = low.total_degree();
    const BivarPoly extra = testing::random_poly(rng, "x", "y", m + 3, 9, 6);
    for (const auto& [mono, c] : extra.terms())
      if (static_cast<int>(mono.degree()) > m) f = f + BivarPoly("x", "y", TermMap{{mono, c}});
    const RationalPoint at{random_rational(rng, 3, 2), random_rational(rng, 3, 2)};
    // move the curve so the planted point sits at `at`
    const BivarPoly g = translate(f, {-at.u, -at.v}).poly;
    REQUIRE(evaluate(g, at) == 0);

    const auto cone = tangent_cone(g, at);
    REQUIRE(cone.multiplicity == m);
    BivarPoly prod = cone.residual;
    int degree_sum = cone.residual.total_degree();
    for (const auto& l : cone.lines) {
      REQUIRE(l.line.total_degree() == 1);
      REQUIRE(lowest_homogeneous_part(l.line) == l.line);
      prod = prod * pow(l.line, static_cast<unsigned>(l.multiplicity));
      degree_sum += l.multiplicity;
    }
    REQUIRE(degree_sum == m);
    const BivarPoly H = cone_polynomial(g, at);
    REQUIRE((normalize(prod) == H));
  }
}

TEST_CASE("blow-down sends both circle points to the node") {
  const BivarPoly lem = C(kEq2, "x", "z");
  // (x, y) -> (x, x*y)
  for (const BigRat y : {BigRat(1), BigRat(-1)}) {
    REQUIRE(evaluate(C(kEq1), {0, y}) == 0);
    CHECK(evaluate(lem, {0, 0 * y}) == 0);
  }
  CHECK(is_singular(lem, {0, 0}).multiplicity == 2);
}

#include "curvekit/transforms.hpp"

#include <algorithm>
#include <map>

#include "curvekit/errors.hpp"
#include "curvekit/univariate.hpp"

namespace curvekit {

namespace {

struct Orientation {
  bool pivot_is_u;
  std::uint32_t pivot_exp(const Monomial& m) const { return pivot_is_u ? m.eu : m.ev; }
  std::uint32_t other_exp(const Monomial& m) const { return pivot_is_u ? m.ev : m.eu; }
  Monomial make(std::uint32_t pivot_e, std::uint32_t other_e) const {
    return pivot_is_u ? Monomial{pivot_e, other_e} : Monomial{other_e, pivot_e};
  }
};

Orientation check_step(const BivarPoly& f, const TransformStep& step) {
  if (!f.has_variable(step.pivot) || !f.has_variable(step.replaced) ||
      step.pivot == step.replaced)
    throw CurveError(Errc::VariableMismatch,
                     "step pivot/replaced (" + step.pivot + "," + step.replaced +
                         ") must be the curve variables (" + f.var_u() + "," + f.var_v() + ")");
  if (step.new_var == step.pivot || !is_valid_variable_name(step.new_var))
    throw CurveError(Errc::VariableMismatch,
                     "new variable '" + step.new_var + "' must be a fresh name distinct from pivot");
  if (f.is_zero()) throw CurveError(Errc::DegreeOfZero, "cannot transform the zero polynomial");
  return Orientation{f.var_u() == step.pivot};
}

/// (q*p - s)^k for k = 0..n as ascending coefficient lists in p.
std::vector<upoly::UPoly> axis_powers(const BigRat& center, std::uint32_t n) {
  const upoly::UPoly linear{-center.get_num(), center.get_den()};
  std::vector<upoly::UPoly> out(n + 1);
  out[0] = {BigInt(1)};
  for (std::uint32_t k = 1; k <= n; ++k) out[k] = upoly::mul(out[k - 1], linear);
  return out;
}

void accumulate(TermMap& t, const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = t.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

}  // namespace

std::pair<BivarPoly, int> strip_axis_factor(const BivarPoly& f, std::string_view pivot,
                                            const BigRat& center) {
  if (!f.has_variable(pivot))
    throw CurveError(Errc::VariableMismatch, "'" + std::string(pivot) + "' is not a variable");
  if (f.is_zero()) throw CurveError(Errc::DegreeOfZero, "zero polynomial");
  const Orientation o{f.var_u() == pivot};

  // Columns: for each exponent of the other variable, a univariate poly in pivot.
  std::map<std::uint32_t, upoly::UPoly> columns;
  for (const auto& [m, c] : f.terms()) {
    auto& col = columns[o.other_exp(m)];
    const std::uint32_t e = o.pivot_exp(m);
    if (col.size() <= e) col.resize(e + 1, BigInt(0));
    col[e] = c;
  }
  const BigInt& lead = center.get_den();
  const BigInt& tail = center.get_num();
  int k = 0;
  while (true) {
    std::map<std::uint32_t, upoly::UPoly> next;
    bool divisible = true;
    for (const auto& [e, col] : columns) {
      auto q = upoly::divide_by_linear(col, lead, tail);
      if (!q) {
        divisible = false;
        break;
      }
      next.emplace(e, std::move(*q));
    }
    if (!divisible) break;
    columns = std::move(next);
    ++k;
  }
  if (k == 0) return {f, 0};
  TermMap t;
  for (const auto& [other, col] : columns)
    for (std::size_t i = 0; i < col.size(); ++i)
      if (col[i] != 0) t.emplace(o.make(static_cast<std::uint32_t>(i), other), col[i]);
  return {BivarPoly(f.var_u(), f.var_v(), std::move(t)), k};
}

BivarPoly blow_down(const BivarPoly& f, const TransformStep& step) {
  const Orientation o = check_step(f, step);
  const auto d = static_cast<std::uint32_t>(degree_in(f, step.replaced));

  std::uint32_t max_pivot = 0;
  for (const auto& [m, c] : f.terms()) max_pivot = std::max(max_pivot, o.pivot_exp(m));
  check_degree_limit(static_cast<long long>(max_pivot) + d);

  // c p^i r^j  ->  c q^j p^i (q p - s)^(d-j) w^j   (a = s/q)
  const auto lin = axis_powers(step.center, d);
  std::vector<BigInt> qpow(d + 1);
  qpow[0] = 1;
  for (std::uint32_t j = 1; j <= d; ++j) qpow[j] = qpow[j - 1] * step.center.get_den();

  TermMap out;  // orientation (pivot, new_var)
  BigInt coeff;
  for (const auto& [m, c] : f.terms()) {
    const std::uint32_t i = o.pivot_exp(m), j = o.other_exp(m);
    const BigInt base = c * qpow[j];
    const auto& factor = lin[d - j];
    for (std::size_t k = 0; k < factor.size(); ++k) {
      coeff = base * factor[k];
      accumulate(out, Monomial{i + static_cast<std::uint32_t>(k), j}, coeff);
    }
  }
  BivarPoly h(step.pivot, step.new_var, std::move(out));
  if (step.strict) h = strip_axis_factor(h, step.pivot, step.center).first;
  return normalize(h);
}

BlowUpResult blow_up(const BivarPoly& f, const TransformStep& step) {
  const Orientation o = check_step(f, step);
  const auto d = static_cast<std::uint32_t>(degree_in(f, step.replaced));

  long long max_deg = 0;
  for (const auto& [m, c] : f.terms())
    max_deg = std::max<long long>(max_deg, o.pivot_exp(m) + 2LL * o.other_exp(m));
  check_degree_limit(max_deg);

  // q^d * f(p, (p - a) w) with a = s/q:  c p^i r^j -> c q^(d-j) p^i (q p - s)^j w^j
  const auto lin = axis_powers(step.center, d);
  std::vector<BigInt> qpow(d + 1);
  qpow[0] = 1;
  for (std::uint32_t j = 1; j <= d; ++j) qpow[j] = qpow[j - 1] * step.center.get_den();

  TermMap out;
  BigInt coeff;
  for (const auto& [m, c] : f.terms()) {
    const std::uint32_t i = o.pivot_exp(m), j = o.other_exp(m);
    const BigInt base = c * qpow[d - j];
    const auto& factor = lin[j];
    for (std::size_t k = 0; k < factor.size(); ++k) {
      coeff = base * factor[k];
      accumulate(out, Monomial{i + static_cast<std::uint32_t>(k), j}, coeff);
    }
  }
  BivarPoly substituted(step.pivot, step.new_var, std::move(out));
  auto [proper, k] = strip_axis_factor(substituted, step.pivot, step.center);
  if (proper.is_constant())
    throw CurveError(Errc::DegenerateTransform,
                     "proper transform is constant: the curve lies on exceptional lines " +
                         step.pivot + "=" + to_string(step.center));
  return {normalize(proper), k};
}

BivarPoly partial_derivative(const BivarPoly& f, std::string_view var) {
  return normalize(derivative(f, var));
}

std::string_view status_name(PointClass::Status s) {
  switch (s) {
    case PointClass::Status::NotOnCurve: return "NotOnCurve";
    case PointClass::Status::SmoothPoint: return "SmoothPoint";
    case PointClass::Status::SingularPoint: return "SingularPoint";
  }
  return "Unknown";
}

BivarPoly cone_polynomial(const BivarPoly& f, const RationalPoint& at) {
  return normalize(lowest_homogeneous_part(translate(f, at).poly));
}

PointClass is_singular(const BivarPoly& f, const RationalPoint& at) {
  if (evaluate(f, at) != 0) return {PointClass::Status::NotOnCurve, 0};
  const BivarPoly cone = cone_polynomial(f, at);
  // f vanishes identically only for the zero polynomial: every point is on it
  // with undefined multiplicity; report it as singular of multiplicity 0.
  if (cone.is_zero()) return {PointClass::Status::SingularPoint, 0};
  const int m = cone.total_degree();
  return {m == 1 ? PointClass::Status::SmoothPoint : PointClass::Status::SingularPoint, m};
}

TangentCone tangent_cone(const BivarPoly& f, const RationalPoint& at) {
  if (f.is_zero() || evaluate(f, at) != 0)
    throw CurveError(Errc::NotOnCurve,
                     "(" + to_string(at.u) + "," + to_string(at.v) + ") is not on the curve");
  const BivarPoly cone = cone_polynomial(f, at);
  const std::string& u = f.var_u();
  const std::string& v = f.var_v();

  TangentCone result{cone.total_degree(), {}, BivarPoly::constant(u, v, 1)};

  std::uint32_t min_u = UINT32_MAX, min_v = UINT32_MAX;
  for (const auto& [m, c] : cone.terms()) {
    min_u = std::min(min_u, m.eu);
    min_v = std::min(min_v, m.ev);
  }
  if (min_u > 0) result.lines.push_back({BivarPoly::variable(u, v, u), static_cast<int>(min_u)});
  if (min_v > 0) result.lines.push_back({BivarPoly::variable(u, v, v), static_cast<int>(min_v)});

  // Dehomogenize at u = 1: since u no longer divides the reduced form, its
  // v-degree equals its total degree and no line is lost.
  const std::uint32_t reduced_degree = static_cast<std::uint32_t>(result.multiplicity) - min_u - min_v;
  upoly::UPoly g(reduced_degree + 1, BigInt(0));
  for (const auto& [m, c] : cone.terms()) g[m.ev - min_v] = c;

  auto split = upoly::rational_roots(g);
  for (const auto& root : split.roots) {
    TermMap t;
    // t*v - s*u for root s/t
    t.emplace(Monomial{0, 1}, root.value.get_den());
    if (root.value.get_num() != 0) t.emplace(Monomial{1, 0}, -root.value.get_num());
    result.lines.push_back({BivarPoly(u, v, std::move(t)), static_cast<int>(root.multiplicity)});
  }

  const int rest = upoly::degree(split.remainder);
  if (rest >= 1) {
    TermMap t;
    for (int j = 0; j <= rest; ++j)
      if (split.remainder[j] != 0)
        t.emplace(Monomial{static_cast<std::uint32_t>(rest - j), static_cast<std::uint32_t>(j)},
                  split.remainder[j]);
    result.residual = normalize(BivarPoly(u, v, std::move(t)));
  }
  return result;
}

}  // namespace curvekit

#include "curvekit/poly.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <vector>

#include "curvekit/errors.hpp"

namespace curvekit {

namespace {

std::atomic<int> g_max_degree{64};

void require_same_vars(const BivarPoly& p, const BivarPoly& q) {
  if (p.var_u() != q.var_u() || p.var_v() != q.var_v())
    throw CurveError(Errc::VariableMismatch, "(" + p.var_u() + "," + p.var_v() + ") vs (" +
                                                 q.var_u() + "," + q.var_v() + ")");
}

void accumulate(TermMap& terms, const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

std::vector<BigInt> powers_of(const BigInt& base, std::uint32_t n) {
  std::vector<BigInt> out(n + 1);
  out[0] = 1;
  for (std::uint32_t i = 1; i <= n; ++i) out[i] = out[i - 1] * base;
  return out;
}

std::vector<BigRat> powers_of(const BigRat& base, std::uint32_t n) {
  std::vector<BigRat> out(n + 1);
  out[0] = 1;
  for (std::uint32_t i = 1; i <= n; ++i) out[i] = out[i - 1] * base;
  return out;
}

BigInt binomial(std::uint32_t n, std::uint32_t k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

bool is_valid_variable_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '_';
  });
}

BivarPoly::BivarPoly(std::string var_u, std::string var_v)
    : var_u_(std::move(var_u)), var_v_(std::move(var_v)) {
  if (var_u_ == var_v_)
    throw CurveError(Errc::VariableMismatch, "variables must differ, got '" + var_u_ + "' twice");
  if (!is_valid_variable_name(var_u_) || !is_valid_variable_name(var_v_))
    throw CurveError(Errc::VariableMismatch,
                     "invalid variable name in (" + var_u_ + "," + var_v_ + ")");
}

BivarPoly::BivarPoly(std::string var_u, std::string var_v, TermMap terms)
    : BivarPoly(std::move(var_u), std::move(var_v)) {
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  terms_ = std::move(terms);
}

BivarPoly BivarPoly::constant(std::string var_u, std::string var_v, const BigInt& c) {
  TermMap t;
  t.emplace(Monomial{0, 0}, c);
  return BivarPoly(std::move(var_u), std::move(var_v), std::move(t));
}

BivarPoly BivarPoly::variable(std::string var_u, std::string var_v, std::string_view name) {
  Monomial m;
  if (name == var_u)
    m.eu = 1;
  else if (name == var_v)
    m.ev = 1;
  else
    throw CurveError(Errc::VariableMismatch, "unknown variable '" + std::string(name) + "'");
  TermMap t;
  t.emplace(m, BigInt(1));
  return BivarPoly(std::move(var_u), std::move(var_v), std::move(t));
}

bool BivarPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

BigInt BivarPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

int BivarPoly::total_degree() const noexcept {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.degree());
}

int max_total_degree() noexcept { return g_max_degree.load(std::memory_order_relaxed); }

void set_max_total_degree(int limit) noexcept {
  g_max_degree.store(limit, std::memory_order_relaxed);
}

void check_degree_limit(long long degree) {
  if (degree > max_total_degree())
    throw CurveError(Errc::DegreeLimitExceeded, "total degree " + std::to_string(degree) +
                                                    " exceeds limit " +
                                                    std::to_string(max_total_degree()));
}

BivarPoly add(const BivarPoly& p, const BivarPoly& q) {
  require_same_vars(p, q);
  TermMap t = p.terms();
  for (const auto& [m, c] : q.terms()) accumulate(t, m, c);
  return BivarPoly(p.var_u(), p.var_v(), std::move(t));
}

BivarPoly negate(const BivarPoly& p) {
  TermMap t = p.terms();
  for (auto& [m, c] : t) c = -c;
  return BivarPoly(p.var_u(), p.var_v(), std::move(t));
}

BivarPoly sub(const BivarPoly& p, const BivarPoly& q) {
  require_same_vars(p, q);
  TermMap t = p.terms();
  for (const auto& [m, c] : q.terms()) accumulate(t, m, -c);
  return BivarPoly(p.var_u(), p.var_v(), std::move(t));
}

BivarPoly mul(const BivarPoly& p, const BivarPoly& q) {
  require_same_vars(p, q);
  if (p.is_zero() || q.is_zero()) return BivarPoly(p.var_u(), p.var_v());
  check_degree_limit(static_cast<long long>(p.total_degree()) + q.total_degree());
  TermMap t;
  BigInt prod;
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      prod = cp * cq;
      accumulate(t, Monomial{mp.eu + mq.eu, mp.ev + mq.ev}, prod);
    }
  }
  return BivarPoly(p.var_u(), p.var_v(), std::move(t));
}

BivarPoly scale(const BivarPoly& p, const BigInt& factor) {
  if (factor == 0) return BivarPoly(p.var_u(), p.var_v());
  TermMap t = p.terms();
  for (auto& [m, c] : t) c *= factor;
  return BivarPoly(p.var_u(), p.var_v(), std::move(t));
}

BivarPoly pow(const BivarPoly& p, unsigned k) {
  if (k == 0) return BivarPoly::constant(p.var_u(), p.var_v(), 1);
  if (p.is_zero()) return p;
  check_degree_limit(static_cast<long long>(p.total_degree()) * k);
  BivarPoly result = BivarPoly::constant(p.var_u(), p.var_v(), 1);
  BivarPoly base = p;
  while (true) {
    if (k & 1u) result = mul(result, base);
    k >>= 1u;
    if (k == 0) break;
    base = mul(base, base);
  }
  return result;
}

BigRat evaluate(const BivarPoly& p, const RationalPoint& at) {
  if (p.is_zero()) return 0;
  std::uint32_t max_u = 0, max_v = 0;
  for (const auto& [m, c] : p.terms()) {
    max_u = std::max(max_u, m.eu);
    max_v = std::max(max_v, m.ev);
  }
  auto pu = powers_of(at.u, max_u);
  auto pv = powers_of(at.v, max_v);
  BigRat sum = 0;
  for (const auto& [m, c] : p.terms()) sum += BigRat(c) * pu[m.eu] * pv[m.ev];
  sum.canonicalize();
  return sum;
}

Translated translate(const BivarPoly& p, const RationalPoint& by) {
  if (p.is_zero()) return {p, BigRat(1)};
  std::uint32_t max_u = 0, max_v = 0;
  for (const auto& [m, c] : p.terms()) {
    max_u = std::max(max_u, m.eu);
    max_v = std::max(max_v, m.ev);
  }
  // With a = sa/qa, b = sb/qb the integer polynomial
  //   qa^max_u * qb^max_v * p(u + a, v + b)
  // expands term-wise as c * qa^(max_u-i) (qa u + sa)^i * qb^(max_v-j) (qb v + sb)^j.
  const BigInt& sa = by.u.get_num();
  const BigInt& qa = by.u.get_den();
  const BigInt& sb = by.v.get_num();
  const BigInt& qb = by.v.get_den();
  auto pow_sa = powers_of(sa, max_u), pow_qa = powers_of(qa, max_u);
  auto pow_sb = powers_of(sb, max_v), pow_qb = powers_of(qb, max_v);

  // Row expansions (qa u + sa)^i as coefficient lists, cached per exponent.
  auto expansion = [](std::uint32_t n, const std::vector<BigInt>& lead,
                      const std::vector<BigInt>& tail) {
    std::vector<BigInt> coeffs(n + 1);
    for (std::uint32_t k = 0; k <= n; ++k) coeffs[k] = binomial(n, k) * lead[k] * tail[n - k];
    return coeffs;
  };
  std::vector<std::vector<BigInt>> exp_u(max_u + 1), exp_v(max_v + 1);
  for (std::uint32_t i = 0; i <= max_u; ++i) exp_u[i] = expansion(i, pow_qa, pow_sa);
  for (std::uint32_t j = 0; j <= max_v; ++j) exp_v[j] = expansion(j, pow_qb, pow_sb);

  TermMap t;
  BigInt coeff;
  for (const auto& [m, c] : p.terms()) {
    BigInt base = c * pow_qa[max_u - m.eu] * pow_qb[max_v - m.ev];
    const auto& eu = exp_u[m.eu];
    const auto& ev = exp_v[m.ev];
    for (std::uint32_t k = 0; k <= m.eu; ++k) {
      if (eu[k] == 0) continue;
      BigInt left = base * eu[k];
      for (std::uint32_t l = 0; l <= m.ev; ++l) {
        if (ev[l] == 0) continue;
        coeff = left * ev[l];
        accumulate(t, Monomial{k, l}, coeff);
      }
    }
  }
  BivarPoly raw(p.var_u(), p.var_v(), std::move(t));
  BigInt multiplier = pow_qa[max_u] * pow_qb[max_v];
  BivarPoly canon = normalize(raw);
  // raw = g * sign * canon; canon = multiplier / (g * sign) * p(u+a, v+b).
  BigRat factor(multiplier, 1);
  if (!raw.is_zero()) {
    BigInt g = content(raw);
    if (raw.terms().begin()->second < 0) g = -g;
    factor /= BigRat(g);
  }
  factor.canonicalize();
  return {std::move(canon), std::move(factor)};
}

int degree_in(const BivarPoly& p, std::string_view var) {
  if (!p.has_variable(var))
    throw CurveError(Errc::VariableMismatch, "'" + std::string(var) + "' is not a variable of (" +
                                                 p.var_u() + "," + p.var_v() + ")");
  if (p.is_zero()) throw CurveError(Errc::DegreeOfZero, "degree of the zero polynomial");
  const bool is_u = var == p.var_u();
  std::uint32_t best = 0;
  for (const auto& [m, c] : p.terms()) best = std::max(best, is_u ? m.eu : m.ev);
  return static_cast<int>(best);
}

BigInt content(const BivarPoly& p) {
  BigInt g = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

BivarPoly normalize(const BivarPoly& p) {
  if (p.is_zero()) return p;
  BigInt g = content(p);
  if (p.terms().begin()->second < 0) g = -g;
  if (g == 1) return p;
  TermMap t = p.terms();
  for (auto& [m, c] : t) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return BivarPoly(p.var_u(), p.var_v(), std::move(t));
}

bool is_canonical(const BivarPoly& p) {
  return p.is_zero() || (p.terms().begin()->second > 0 && content(p) == 1);
}

BivarPoly derivative(const BivarPoly& p, std::string_view var) {
  if (!p.has_variable(var))
    throw CurveError(Errc::VariableMismatch, "'" + std::string(var) + "' is not a variable of (" +
                                                 p.var_u() + "," + p.var_v() + ")");
  const bool is_u = var == p.var_u();
  TermMap t;
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t e = is_u ? m.eu : m.ev;
    if (e == 0) continue;
    Monomial d = is_u ? Monomial{m.eu - 1, m.ev} : Monomial{m.eu, m.ev - 1};
    accumulate(t, d, c * e);
  }
  return BivarPoly(p.var_u(), p.var_v(), std::move(t));
}

BivarPoly lowest_homogeneous_part(const BivarPoly& p) {
  if (p.is_zero()) return p;
  const std::uint32_t low = p.terms().rbegin()->first.degree();
  TermMap t;
  for (const auto& [m, c] : p.terms())
    if (m.degree() == low) t.emplace(m, c);
  return BivarPoly(p.var_u(), p.var_v(), std::move(t));
}

BivarPoly with_variables(const BivarPoly& p, std::string_view rename_u, std::string_view rename_v,
                         std::string_view out_u, std::string_view out_v) {
  const bool straight = rename_u == out_u && rename_v == out_v;
  const bool swapped = rename_u == out_v && rename_v == out_u;
  if (!straight && !swapped)
    throw CurveError(Errc::VariableMismatch, "cannot map (" + std::string(rename_u) + "," +
                                                 std::string(rename_v) + ") onto (" +
                                                 std::string(out_u) + "," + std::string(out_v) +
                                                 ")");
  if (straight) return BivarPoly(std::string(out_u), std::string(out_v), p.terms());
  TermMap t;
  for (const auto& [m, c] : p.terms()) t.emplace(Monomial{m.ev, m.eu}, c);
  return BivarPoly(std::string(out_u), std::string(out_v), std::move(t));
}

}  // namespace curvekit

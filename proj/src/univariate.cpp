#include "curvekit/univariate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace curvekit::upoly {

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<int>(i);
  return -1;
}

BigRat evaluate(const UPoly& p, const BigRat& x) {
  BigRat acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + BigRat(p[i]);
  acc.canonicalize();
  return acc;
}

UPoly mul(const UPoly& p, const UPoly& q) {
  if (p.empty() || q.empty()) return {};
  UPoly out(p.size() + q.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  trim(out);
  return out;
}

std::optional<UPoly> divide_by_linear(const UPoly& p, const BigInt& lead, const BigInt& tail) {
  const int n = degree(p);
  if (n < 0) return UPoly{};
  if (n == 0) return std::nullopt;
  UPoly b(static_cast<std::size_t>(n));
  BigInt acc;
  // p = (lead*x - tail) * b, solved from the top coefficient down.
  acc = p[n];
  for (int k = n; k >= 1; --k) {
    if (!mpz_divisible_p(acc.get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
    mpz_divexact(b[k - 1].get_mpz_t(), acc.get_mpz_t(), lead.get_mpz_t());
    if (k >= 2) acc = p[k - 1] + tail * b[k - 1];
  }
  if (p[0] != -tail * b[0]) return std::nullopt;
  trim(b);
  return b;
}

namespace {

BigInt pollard_brent(const BigInt& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  BigInt y = seed, c = seed + 1, m = 64, g = 1, r = 1, q = 1, x, ys, diff;
  auto step = [&](BigInt& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1) {
    x = y;
    for (BigInt i = 0; i < r; ++i) step(y);
    BigInt k = 0;
    while (k < r && g == 1) {
      ys = y;
      BigInt lim = std::min<BigInt>(m, r - k);
      for (BigInt i = 0; i < lim; ++i) {
        step(y);
        diff = abs(x - y);
        q = q * diff;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      step(ys);
      diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void split(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  BigInt d = n;
  for (unsigned long seed = 2; d == n; ++seed) d = pollard_brent(n, seed);
  split(d, out);
  split(n / d, out);
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n) {
  BigInt m = abs(n);
  std::map<BigInt, unsigned> found;
  for (unsigned long p = 2; p < 10000 && m > 1; p += (p == 2 ? 1 : 2)) {
    if (BigInt(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++found[BigInt(p)];
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    }
  }
  split(m, found);
  return {found.begin(), found.end()};
}

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> out{1};
  for (const auto& [prime, exp] : factorize(n)) {
    const std::size_t existing = out.size();
    BigInt pk = 1;
    for (unsigned e = 1; e <= exp; ++e) {
      pk *= prime;
      for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RootSplit rational_roots(const UPoly& p) {
  RootSplit result;
  result.remainder = p;
  trim(result.remainder);
  if (result.remainder.empty()) return result;

  unsigned zero_mult = 0;
  while (result.remainder.front() == 0) {
    result.remainder.erase(result.remainder.begin());
    ++zero_mult;
  }
  if (degree(result.remainder) >= 1) {
    std::set<BigRat> candidates;
    const auto numerators = divisors(result.remainder.front());
    const auto denominators = divisors(result.remainder.back());
    for (const auto& s : numerators) {
      for (const auto& t : denominators) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t());
        if (g != 1) continue;
        candidates.insert(BigRat(s, t));
        candidates.insert(BigRat(-s, t));
      }
    }
    for (const auto& r : candidates) {
      unsigned mult = 0;
      while (degree(result.remainder) >= 1) {
        auto q = divide_by_linear(result.remainder, r.get_den(), r.get_num());
        if (!q) break;
        result.remainder = std::move(*q);
        ++mult;
      }
      if (mult > 0) result.roots.push_back({r, mult});
      if (degree(result.remainder) < 1) break;
    }
  }
  if (zero_mult > 0) result.roots.push_back({BigRat(0), zero_mult});
  std::sort(result.roots.begin(), result.roots.end(),
            [](const Root& a, const Root& b) { return a.value > b.value; });
  return result;
}

}  // namespace curvekit::upoly

#pragma once

// Sparse bivariate polynomials with exact integer coefficients.
//
// A BivarPoly is a ring element: add/mul/pow are exact and never rescale.
// The canonical curve form (primitive, positive graded-lex leading
// coefficient) is produced by normalize(); every operation that returns a
// *curve* (transforms, catalog, translate) returns it in canonical form.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "curvekit/rational.hpp"

namespace curvekit {

struct Monomial {
  std::uint32_t eu = 0;  // exponent of var_u
  std::uint32_t ev = 0;  // exponent of var_v

  constexpr std::uint32_t degree() const noexcept { return eu + ev; }
  friend constexpr bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order with var_u > var_v, greatest first.
struct GrlexGreater {
  constexpr bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.eu > b.eu;
  }
};

using TermMap = std::map<Monomial, BigInt, GrlexGreater>;

struct RationalPoint {
  BigRat u;
  BigRat v;
};

/// True for names the expression grammar can read back: one ASCII letter
/// followed by digits or underscores ("x", "t2", "y_1").
bool is_valid_variable_name(std::string_view name);

class BivarPoly {
 public:
  /// The zero polynomial in (var_u, var_v).
  BivarPoly(std::string var_u, std::string var_v);
  /// Zero coefficients in `terms` are dropped.
  BivarPoly(std::string var_u, std::string var_v, TermMap terms);

  static BivarPoly constant(std::string var_u, std::string var_v, const BigInt& c);
  /// The polynomial consisting of the single variable `name` (must be var_u or var_v).
  static BivarPoly variable(std::string var_u, std::string var_v, std::string_view name);

  const std::string& var_u() const noexcept { return var_u_; }
  const std::string& var_v() const noexcept { return var_v_; }
  const TermMap& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  std::size_t size() const noexcept { return terms_.size(); }
  /// Coefficient of `m`, zero if absent.
  BigInt coefficient(const Monomial& m) const;
  /// Total degree; -1 for the zero polynomial.
  int total_degree() const noexcept;
  bool has_variable(std::string_view name) const noexcept {
    return name == var_u_ || name == var_v_;
  }

  friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
    return a.var_u_ == b.var_u_ && a.var_v_ == b.var_v_ && a.terms_ == b.terms_;
  }

 private:
  std::string var_u_;
  std::string var_v_;
  TermMap terms_;
};

// Degree guard shared by all constructive operations. Default 64.
int max_total_degree() noexcept;
void set_max_total_degree(int limit) noexcept;
/// Throws DegreeLimitExceeded when `degree` exceeds the configured bound.
void check_degree_limit(long long degree);

BivarPoly add(const BivarPoly& p, const BivarPoly& q);
BivarPoly sub(const BivarPoly& p, const BivarPoly& q);
BivarPoly negate(const BivarPoly& p);
BivarPoly mul(const BivarPoly& p, const BivarPoly& q);
BivarPoly scale(const BivarPoly& p, const BigInt& factor);
BivarPoly pow(const BivarPoly& p, unsigned k);

inline BivarPoly operator+(const BivarPoly& p, const BivarPoly& q) { return add(p, q); }
inline BivarPoly operator-(const BivarPoly& p, const BivarPoly& q) { return sub(p, q); }
inline BivarPoly operator-(const BivarPoly& p) { return negate(p); }
inline BivarPoly operator*(const BivarPoly& p, const BivarPoly& q) { return mul(p, q); }

BigRat evaluate(const BivarPoly& p, const RationalPoint& at);

struct Translated {
  BivarPoly poly;
  /// poly == scale * p(u + by.u, v + by.v) coefficient-wise.
  BigRat scale;
};

/// Substitutes u -> u + by.u, v -> v + by.v and re-normalizes to canonical form.
Translated translate(const BivarPoly& p, const RationalPoint& by);

/// Highest exponent of `var`. Throws DegreeOfZero / VariableMismatch.
int degree_in(const BivarPoly& p, std::string_view var);

/// gcd of all coefficients (non-negative); zero for the zero polynomial.
BigInt content(const BivarPoly& p);

/// Divides out the content and makes the graded-lex leading coefficient positive.
BivarPoly normalize(const BivarPoly& p);
bool is_canonical(const BivarPoly& p);

/// Exact formal derivative; no normalization.
BivarPoly derivative(const BivarPoly& p, std::string_view var);

/// Terms of minimal total degree; zero for the zero polynomial.
BivarPoly lowest_homogeneous_part(const BivarPoly& p);

/// Reinterprets p over a new variable pair. `rename_u`/`rename_v` give the new
/// names of p.var_u()/p.var_v(); the result uses (out_u, out_v) ordering, so
/// swapping roles re-sorts the terms.
BivarPoly with_variables(const BivarPoly& p, std::string_view rename_u, std::string_view rename_v,
                         std::string_view out_u, std::string_view out_v);

}  // namespace curvekit

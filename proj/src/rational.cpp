#include "curvekit/rational.hpp"

#include <cctype>

#include "curvekit/errors.hpp"

namespace curvekit {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

BigRat parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw CurveError(Errc::ParseError, "not a rational literal: '" + std::string(text) + "'");
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw CurveError(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  BigRat r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& value) { return value.get_str(); }

std::string to_string(const BigRat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace curvekit

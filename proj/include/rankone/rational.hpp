#pragma once

// Exact integer and rational scalars used throughout the engine.

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "rankone/error.hpp"

namespace rankone {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer iabs(const Integer& a) { return a < 0 ? Integer(-a) : a; }
inline Rational rabs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

/// Floor division for b > 0 (cpp_int division truncates toward zero).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer floor(const Rational& q) { return floor_div(num(q), den(q)); }
inline Integer ceil(const Rational& q) { return -floor_div(-num(q), den(q)); }
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

inline Integer isqrt(const Integer& a) {
  if (a < 0) fail(Errc::invalid_argument, "isqrt of negative value");
  return boost::multiprecision::sqrt(a);
}

/// Smallest integer c with c*c >= a.
inline Integer ceil_sqrt(const Integer& a) {
  Integer s = isqrt(a);
  if (s * s < a) ++s;
  return s;
}

inline bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  const Integer n = num(q), d = den(q);
  const Integer sn = isqrt(n), sd = isqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  root = Rational(sn, sd);
  return true;
}

inline Rational pow2(long e) {
  Integer one = 1;
  if (e >= 0) return Rational(one << static_cast<unsigned>(e));
  return Rational(Integer(1), one << static_cast<unsigned>(-e));
}

inline std::string to_string(const Integer& a) { return a.str(); }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

/// Always "p/q"; used by the exporters so every numeric field is a fraction.
inline std::string to_fraction(const Rational& q) { return num(q).str() + "/" + den(q).str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Integer parse_integer(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  std::size_t j = s.size();
  while (j > i && std::isspace(static_cast<unsigned char>(s[j - 1]))) --j;
  s = s.substr(i, j - i);
  if (s.empty()) fail(Errc::parse_error, "empty integer");
  std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (k == s.size()) fail(Errc::parse_error, "bad integer '" + std::string(s) + "'");
  for (std::size_t m = k; m < s.size(); ++m)
    if (!std::isdigit(static_cast<unsigned char>(s[m])))
      fail(Errc::parse_error, "bad integer '" + std::string(s) + "'");
  Integer v(std::string(s.substr(k)));
  return s[0] == '-' ? Integer(-v) : v;
}

/// Accepts "p", "p/q" and finite decimals such as "0.49" (converted exactly).
inline Rational parse_rational(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer d = parse_integer(s.substr(slash + 1));
    if (d == 0) fail(Errc::parse_error, "zero denominator in '" + std::string(s) + "'");
    return Rational(parse_integer(s.substr(0, slash)), d);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string digits(s.substr(0, dot));
    std::string_view fracpart = s.substr(dot + 1);
    bool neg = !digits.empty() && digits[0] == '-';
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    for (char c : fracpart)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        fail(Errc::parse_error, "bad decimal '" + std::string(s) + "'");
    Integer whole = parse_integer(digits);
    Integer scale = 1;
    for (std::size_t i = 0; i < fracpart.size(); ++i) scale *= 10;
    Integer f = fracpart.empty() ? Integer(0) : Integer(std::string(fracpart));
    Rational r = Rational(iabs(whole)) + Rational(f, scale);
    return neg ? Rational(-r) : r;
  }
  return Rational(parse_integer(s));
}

}  // namespace rankone

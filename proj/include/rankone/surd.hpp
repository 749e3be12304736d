#pragma once

// Numbers of the form a + b·√d with rational a, b, d (d >= 0). Signs are
// decided exactly; rational enclosures refine on demand.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <compare>
#include <optional>
#include <string>

#include "rankone/rational.hpp"

namespace rankone {

/// Closed rational interval [lo, hi] used as an enclosure.
struct Bracket {
  Rational lo = 0;
  Rational hi = 0;
  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

namespace detail {
inline std::atomic<unsigned>& precision_cap_storage() {
  static std::atomic<unsigned> bits{256};
  return bits;
}
}  // namespace detail

/// Enclosures are refined down to width 2^-cap before a comparison is
/// reported undecidable.
inline unsigned precision_cap() { return detail::precision_cap_storage().load(); }
inline void set_precision_cap(unsigned bits) { detail::precision_cap_storage().store(std::max(bits, 8u)); }

class PrecisionCapGuard {
 public:
  explicit PrecisionCapGuard(unsigned bits) : saved_(precision_cap()) { set_precision_cap(bits); }
  ~PrecisionCapGuard() { set_precision_cap(saved_); }
  PrecisionCapGuard(const PrecisionCapGuard&) = delete;
  PrecisionCapGuard& operator=(const PrecisionCapGuard&) = delete;

 private:
  unsigned saved_;
};

inline int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

/// √q ∈ [s, s + 2^-bits/den] as a nested dyadic-scaled enclosure.
inline Bracket sqrt_bracket(const Rational& q, unsigned bits) {
  if (q < 0) fail(Errc::invalid_argument, "square root of negative rational");
  Rational root;
  if (exact_sqrt(q, root)) return {root, root};
  const Integer n = num(q), d = den(q);
  const Integer scale = Integer(1) << bits;
  const Integer s = isqrt(n * d * scale * scale);
  return {Rational(s, d * scale), Rational(s + 1, d * scale)};
}

class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Rational a) : a_(std::move(a)) {}  // NOLINT: implicit from rational is intended
  QuadraticSurd(Rational a, Rational b, Rational d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (d_ < 0) fail(Errc::invalid_argument, "negative radicand");
    normalize();
  }
  static QuadraticSurd sqrt(const Rational& d) { return {Rational(0), Rational(1), d}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& d() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  int sign() const {
    const int sa = sign_of(a_), sb = sign_of(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // a and b√d have opposite signs: compare a² with b²d.
    const Rational lhs = a_ * a_, rhs = b_ * b_ * d_;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  Bracket enclose(unsigned bits) const {
    if (is_rational()) return {a_, a_};
    Bracket r = sqrt_bracket(d_, bits);
    Rational x = a_ + b_ * r.lo, y = a_ + b_ * r.hi;
    if (x > y) std::swap(x, y);
    return {x, y};
  }

  QuadraticSurd operator-() const { return raw(-a_, -b_, d_); }
  friend QuadraticSurd operator+(const QuadraticSurd& p, const QuadraticSurd& q) {
    const Rational& d = common(p, q);
    return raw(p.a_ + q.a_, p.b_ + q.b_, d);
  }
  friend QuadraticSurd operator-(const QuadraticSurd& p, const QuadraticSurd& q) { return p + (-q); }
  friend QuadraticSurd operator*(const QuadraticSurd& p, const QuadraticSurd& q) {
    const Rational& d = common(p, q);
    return raw(p.a_ * q.a_ + p.b_ * q.b_ * d, p.a_ * q.b_ + p.b_ * q.a_, d);
  }
  friend bool operator==(const QuadraticSurd& p, const QuadraticSurd& q) { return (p - q).sign() == 0; }

  double approx() const { return to_double(a_) + to_double(b_) * std::sqrt(to_double(d_)); }

  std::string str() const {
    if (is_rational()) return to_string(a_);
    std::string s = a_ == 0 ? "" : to_string(a_) + (b_ > 0 ? "+" : "");
    return s + to_string(b_) + "*sqrt(" + to_string(d_) + ")";
  }

 private:
  static QuadraticSurd raw(Rational a, Rational b, Rational d) {
    QuadraticSurd s;
    s.a_ = std::move(a);
    s.b_ = std::move(b);
    s.d_ = std::move(d);
    s.normalize();
    return s;
  }
  static const Rational& common(const QuadraticSurd& p, const QuadraticSurd& q) {
    if (p.is_rational()) return q.d_;
    if (q.is_rational() || p.d_ == q.d_) return p.d_;
    fail(Errc::invalid_argument, "surd arithmetic across different radicands");
  }
  void normalize() {
    Rational root;
    if (b_ == 0 || d_ == 0) {
      b_ = 0;
      d_ = 0;
    } else if (exact_sqrt(d_, root)) {
      a_ += b_ * root;
      b_ = 0;
      d_ = 0;
    }
  }

  Rational a_ = 0;
  Rational b_ = 0;
  Rational d_ = 0;
};

}  // namespace rankone

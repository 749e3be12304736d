#pragma once

// Directions θ ∈ [0,π), ε-tunnels and direction windows.
//
// Directions are ordered through the pseudo-angle σ(θ) = 1 − cosθ/(|cosθ| + sinθ),
// a strictly increasing bijection [0,π) → [0,2) that is rational on rational
// directions. σ = 0 is the horizontal direction, σ = 1 the vertical one.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include "rankone/lattice.hpp"
#include "rankone/surd.hpp"

namespace rankone {

/// Refinable pseudo-angle of a direction.
class AngleCoord {
 public:
  static AngleCoord exact(Rational s) {
    AngleCoord c;
    c.exact_ = std::move(s);
    return c;
  }
  /// Direction of the line spanned by (x, y); (x, y) must be nonzero.
  static AngleCoord of_vector(QuadraticSurd x, QuadraticSurd y) {
    if (y.sign() < 0 || (y.sign() == 0 && x.sign() < 0)) {
      x = -x;
      y = -y;
    }
    if (y.sign() == 0) {
      if (x.sign() == 0) fail(Errc::no_direction, "zero vector has no direction");
      return exact(0);
    }
    if (x.is_rational() && y.is_rational()) return exact(pseudo(x.a(), y.a()));
    AngleCoord c;
    c.x_ = std::move(x);
    c.y_ = std::move(y);
    return c;
  }

  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact_value() const { return exact_; }

  /// Enclosure of σ at the given precision, or nullopt if the enclosure of
  /// the spanning vector still touches the horizontal axis.
  std::optional<Bracket> bracket(unsigned bits) const {
    if (exact_) return Bracket{*exact_, *exact_};
    Bracket bx = x_.enclose(bits), by = y_.enclose(bits);
    if (by.lo <= 0) return std::nullopt;
    Rational lo, hi;
    bool first = true;
    for (const Rational* px : {&bx.lo, &bx.hi})
      for (const Rational* py : {&by.lo, &by.hi}) {
        Rational s = pseudo(*px, *py);
        if (first || s < lo) lo = s;
        if (first || s > hi) hi = s;
        first = false;
      }
    return Bracket{lo, hi};
  }

  double approx() const {
    if (exact_) return to_double(*exact_);
    double x = x_.approx(), y = y_.approx();
    return 1.0 - x / (std::fabs(x) + y);
  }

  /// A spanning vector in the closed upper half-plane.
  std::pair<QuadraticSurd, QuadraticSurd> vector() const {
    if (!exact_) return {x_, y_};
    const Rational& s = *exact_;
    if (s <= 1) return {QuadraticSurd(Rational(1) - s), QuadraticSurd(s)};
    return {QuadraticSurd(Rational(1) - s), QuadraticSurd(Rational(2) - s)};
  }

  /// σ of the vector (x, y) with y > 0, or y == 0 and x > 0.
  static Rational pseudo(const Rational& x, const Rational& y) { return Rational(1) - x / (rabs(x) + y); }

 private:
  std::optional<Rational> exact_;
  QuadraticSurd x_, y_;
};

namespace detail {
// Sign of P + Q·√e with P, Q in a common field ℚ(√d).
inline int sign_mixed(const QuadraticSurd& p, const QuadraticSurd& q, const Rational& e) {
  const int sp = p.sign(), sq = e == 0 ? 0 : q.sign();
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  const int s = (p * p - q * q * QuadraticSurd(e)).sign();
  return s == 0 ? 0 : (s > 0 ? sp : sq);
}
// Sign of x1·y2 − y1·x2 for surd vectors with possibly different radicands.
inline int cross_sign(const std::pair<QuadraticSurd, QuadraticSurd>& u,
                      const std::pair<QuadraticSurd, QuadraticSurd>& v) {
  const auto& [x1, y1] = u;
  const auto& [x2, y2] = v;
  QuadraticSurd p = x1 * QuadraticSurd(y2.a()) - y1 * QuadraticSurd(x2.a());
  QuadraticSurd q = x1 * QuadraticSurd(y2.b()) - y1 * QuadraticSurd(x2.b());
  const Rational& e = y2.is_rational() ? x2.d() : y2.d();
  return sign_mixed(p, q, e);
}
}  // namespace detail

/// Exact order of pseudo-angles. Cheap enclosures settle most queries; the
/// rest is decided by the sign of a cross product in ℚ(√d₁, √d₂).
inline std::strong_ordering compare(const AngleCoord& a, const AngleCoord& b) {
  if (a.is_exact() && b.is_exact()) {
    const Rational &u = *a.exact_value(), &v = *b.exact_value();
    return u < v ? std::strong_ordering::less : (u > v ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  for (unsigned bits : {48u, 128u}) {
    auto ba = a.bracket(bits), bb = b.bracket(bits);
    if (ba && bb) {
      if (ba->hi < bb->lo) return std::strong_ordering::less;
      if (bb->hi < ba->lo) return std::strong_ordering::greater;
    }
  }
  // Both directions lie in [0, π), where σ increases counter-clockwise.
  const int s = detail::cross_sign(a.vector(), b.vector());
  return s > 0 ? std::strong_ordering::less : (s < 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

struct RationalDir {
  Integer p = 1;
  Integer q = 0;
  friend bool operator==(const RationalDir&, const RationalDir&) = default;
};

/// Irrational direction given through an exact quadratic-surd value of tanθ;
/// its enclosures shrink on refinement.
struct EnclosedDir {
  QuadraticSurd tan;
  bool obtuse = false;  // θ ≥ π/2
  Bracket coarse;       // cached enclosure of tanθ for quick decisions
};

class Direction {
 public:
  Direction() = default;

  /// Direction of the rational line through v (Notation: v and −v agree).
  static Direction of(const LatticeVector& v) {
    if (v.is_zero()) fail(Errc::no_direction, "no direction for the zero vector");
    Integer g = boost::multiprecision::gcd(iabs(v.x), iabs(v.y));
    Integer p = v.x / g, q = v.y / g;
    if (q < 0 || (q == 0 && p < 0)) {
      p = -p;
      q = -q;
    }
    Direction d;
    d.value_ = RationalDir{p, q};
    return d;
  }

  /// Direction with tanθ = t. Rational t yields a RationalDir.
  static Direction from_tan(const QuadraticSurd& t, std::optional<bool> obtuse = std::nullopt) {
    const bool neg = t.sign() < 0;
    if (obtuse && *obtuse != neg) fail(Errc::invalid_argument, "quadrant flag disagrees with the sign of tan");
    if (t.is_rational()) return of(LatticeVector{den(t.a()), num(t.a())});
    Direction d;
    d.value_ = EnclosedDir{t, neg, t.enclose(64)};
    return d;
  }
  /// tanθ = ±√r.
  static Direction tan_sqrt(const Rational& r, bool obtuse = false) {
    QuadraticSurd t = QuadraticSurd::sqrt(r);
    return from_tan(obtuse ? -t : t, obtuse);
  }

  bool is_rational() const { return std::holds_alternative<RationalDir>(value_); }
  const RationalDir& rational() const { return std::get<RationalDir>(value_); }
  const EnclosedDir& enclosed() const { return std::get<EnclosedDir>(value_); }
  LatticeVector vector() const { return {rational().p, rational().q}; }

  AngleCoord coord() const {
    if (is_rational()) {
      const auto& r = rational();
      return AngleCoord::exact(AngleCoord::pseudo(Rational(r.p), Rational(r.q)));
    }
    const auto& e = enclosed();
    return e.obtuse ? AngleCoord::of_vector(QuadraticSurd(Rational(-1)), -e.tan)
                    : AngleCoord::of_vector(QuadraticSurd(Rational(1)), e.tan);
  }

  /// θ in radians, for display only.
  double radians() const {
    if (is_rational()) {
      const auto& r = rational();
      return std::atan2(r.q.convert_to<double>(), r.p.convert_to<double>());
    }
    double a = std::atan(enclosed().tan.approx());
    return a < 0 ? a + std::numbers::pi : a;
  }

  /// "p,q" for rational, "sqrt:r" / "-sqrt:r" for tanθ = ±√r, else the surd.
  std::string str() const {
    if (is_rational()) return rational().p.str() + "," + rational().q.str();
    const auto& t = enclosed().tan;
    if (t.a() == 0 && (t.b() == 1 || t.b() == -1))
      return std::string(t.b() < 0 ? "-" : "") + "sqrt:" + to_string(t.d());
    return "tan:" + t.str();
  }

  friend bool operator==(const Direction& a, const Direction& b) {
    if (a.is_rational() != b.is_rational()) return false;
    if (a.is_rational()) return a.rational() == b.rational();
    return a.enclosed().tan == b.enclosed().tan;
  }

 private:
  std::variant<RationalDir, EnclosedDir> value_ = RationalDir{};
};

inline Direction direction_of(const LatticeVector& v) { return Direction::of(v); }

/// v lies strictly within ε of the line through the origin in direction θ.
inline bool in_tunnel(const LatticeVector& v, const Direction& theta, const Rational& eps) {
  if (eps <= 0) fail(Errc::precondition, "tunnel width must be positive");
  const Rational e2 = eps * eps;
  if (theta.is_rational()) {
    const auto& d = theta.rational();
    Integer c = v.x * d.q - v.y * d.p;
    return Rational(c * c) < e2 * Rational(d.p * d.p + d.q * d.q);
  }
  // (v.y − t·v.x)² − ε²(1 + t²) < 0 with t = tanθ. Both terms are monotone
  // on the cached enclosure of t when v.y − t·v.x keeps its sign there, which
  // settles most queries; the rest are evaluated exactly.
  const Bracket& tb = theta.enclosed().coarse;
  {
    const Rational vx(v.x), vy(v.y);
    Rational r1 = vy - tb.lo * vx, r2 = vy - tb.hi * vx;
    if (sign_of(r1) * sign_of(r2) > 0) {
      r1 = rabs(r1);
      r2 = rabs(r2);
      const Rational rmin = std::min(r1, r2), rmax = std::max(r1, r2);
      const Rational t2max = std::max(tb.lo * tb.lo, tb.hi * tb.hi);
      const Rational t2min = sign_of(tb.lo) * sign_of(tb.hi) > 0 ? std::min(tb.lo * tb.lo, tb.hi * tb.hi) : Rational(0);
      if (rmin * rmin >= e2 * (1 + t2max)) return false;
      if (rmax * rmax < e2 * (1 + t2min)) return true;
    }
  }
  const QuadraticSurd& t = theta.enclosed().tan;
  QuadraticSurd r = QuadraticSurd(Rational(v.y)) - t * QuadraticSurd(Rational(v.x));
  QuadraticSurd g = r * r - QuadraticSurd(e2) * (QuadraticSurd(Rational(1)) + t * t);
  return g.sign() < 0;
}

namespace detail {
// Bucketed key for cyclic order starting at `origin`.
inline std::strong_ordering cyclic_compare(const AngleCoord& origin, const AngleCoord& a, const AngleCoord& b) {
  const bool a_after = compare(a, origin) >= 0, b_after = compare(b, origin) >= 0;
  if (a_after != b_after) return a_after ? std::strong_ordering::less : std::strong_ordering::greater;
  return compare(a, b);
}
}  // namespace detail

/// Open arc of directions from `lo` counter-clockwise to `hi`.
struct DirectionArc {
  AngleCoord lo;
  AngleCoord hi;

  bool contains(const AngleCoord& x) const {
    if (compare(lo, hi) < 0) return compare(lo, x) < 0 && compare(x, hi) < 0;
    return compare(x, lo) > 0 || compare(x, hi) < 0;
  }
  bool contains(const Direction& d) const { return contains(d.coord()); }
  /// Both arcs shorter than a half turn.
  bool subset_of(const DirectionArc& outer) const {
    using detail::cyclic_compare;
    return cyclic_compare(outer.lo, outer.lo, lo) <= 0 && cyclic_compare(outer.lo, lo, hi) < 0 &&
           cyclic_compare(outer.lo, hi, outer.hi) <= 0;
  }
  bool wraps() const { return compare(lo, hi) > 0; }
};

/// Directions θ whose ε-tunnel contains w: the open arc of half-width
/// arcsin(ε/‖w‖) around the direction of w.
struct DirectionWindow {
  LatticeVector w;
  Rational eps;
  DirectionArc arc;

  bool contains(const Direction& d) const { return arc.contains(d); }
  double half_width() const { return std::asin(to_double(eps) / std::sqrt(w.norm2().convert_to<double>())); }
};

inline DirectionWindow direction_window(const LatticeVector& w, const Rational& eps) {
  if (w.is_zero()) fail(Errc::no_direction, "no direction for the zero vector");
  if (eps <= 0) fail(Errc::precondition, "tunnel width must be positive");
  const Rational n2 = Rational(w.norm2());
  if (eps * eps >= n2) fail(Errc::tunnel_covers_all, "tunnel covers all directions: eps >= |w| for w=" + w.str());
  // Rotating w by ±δ with sinδ = ε/‖w‖ gives the boundary directions
  // (r·w.x ∓ ε·w.y, r·w.y ± ε·w.x), r = √(‖w‖² − ε²).
  const QuadraticSurd r = QuadraticSurd::sqrt(n2 - eps * eps);
  const QuadraticSurd wx(Rational(w.x)), wy(Rational(w.y)), e(eps);
  AngleCoord hi = AngleCoord::of_vector(r * wx - e * wy, r * wy + e * wx);
  AngleCoord lo = AngleCoord::of_vector(r * wx + e * wy, r * wy - e * wx);
  return {w, eps, DirectionArc{std::move(lo), std::move(hi)}};
}

/// ε for which the ε-tunnel of direction_of(n) meets ℤ² only in ℤ·n.
inline Rational safe_rational_epsilon(const LatticeVector& n) {
  if (n.is_zero()) fail(Errc::no_direction, "no direction for the zero vector");
  if (boost::multiprecision::gcd(iabs(n.x), iabs(n.y)) != 1)
    fail(Errc::not_primitive, "vector " + n.str() + " is not primitive");
  return Rational(Integer(1), 2 * ceil_sqrt(n.norm2()));
}

/// Whether the w-tunnel of box A, A + ℝw, meets box B (real hulls).
inline bool box_tunnel_intersects(const Box& a, const LatticeVector& w, const Box& b) {
  if (w.is_zero()) fail(Errc::precondition, "tunnel direction must be nonzero");
  const LatticeVector alo = a.lo(), ahi = a.hi(), blo = b.lo(), bhi = b.hi();
  const Integer x0 = blo.x - ahi.x, x1 = bhi.x - alo.x, y0 = blo.y - ahi.y, y1 = bhi.y - alo.y;
  bool neg = false, pos = false;
  for (const Integer* cx : {&x0, &x1})
    for (const Integer* cy : {&y0, &y1}) {
      Integer c = w.x * *cy - w.y * *cx;
      if (c <= 0) neg = true;
      if (c >= 0) pos = true;
    }
  return neg && pos;
}

/// p lies strictly below every line of direction w through a point of B.
inline bool point_below_tunnel(const LatticeVector& p, const LatticeVector& w, const Box& b) {
  if (w.x == 0 || w.y == 0 || (w.x > 0) != (w.y > 0))
    fail(Errc::below_undefined, "below undefined for non-positive slope direction " + w.str());
  const LatticeVector u = w.upper();
  // Binding point minimises b.y − s·b.x: largest x, smallest y.
  const Integer bx = b.hi().x, by = b.lo().y;
  return u.x * (p.y - by) < u.y * (p.x - bx);
}

}  // namespace rankone

#pragma once

// Lattice vectors, square lattice boxes and the floor / fractional split of
// points of the plane.

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

#include "rankone/rational.hpp"

namespace rankone {

struct LatticeVector {
  Integer x = 0;
  Integer y = 0;

  LatticeVector() = default;
  LatticeVector(Integer x_, Integer y_) : x(std::move(x_)), y(std::move(y_)) {}
  LatticeVector(long long x_, long long y_) : x(x_), y(y_) {}

  bool is_zero() const { return x == 0 && y == 0; }
  Integer norm2() const { return x * x + y * y; }
  Integer max_norm() const { return std::max(iabs(x), iabs(y)); }

  /// Representative of {v, -v} with x > 0, or x == 0 and y > 0.
  bool is_upper() const { return x > 0 || (x == 0 && y > 0); }
  LatticeVector upper() const { return is_upper() || is_zero() ? *this : -*this; }

  LatticeVector operator-() const { return {Integer(-x), Integer(-y)}; }
  LatticeVector& operator+=(const LatticeVector& o) { x += o.x; y += o.y; return *this; }
  LatticeVector& operator-=(const LatticeVector& o) { x -= o.x; y -= o.y; return *this; }
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Integer& k, const LatticeVector& v) { return {Integer(k * v.x), Integer(k * v.y)}; }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
    if (a.x != b.x) return a.x < b.x ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.y != b.y) return a.y < b.y ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
  friend std::ostream& operator<<(std::ostream& os, const LatticeVector& v) { return os << v.str(); }
};

inline Integer cross(const LatticeVector& a, const LatticeVector& b) { return a.x * b.y - a.y * b.x; }
inline Integer dot(const LatticeVector& a, const LatticeVector& b) { return a.x * b.x + a.y * b.y; }

/// Order used wherever candidate vectors are searched: Euclidean norm, then
/// the upper representative before its negative, then lexicographic.
inline bool norm_order(const LatticeVector& a, const LatticeVector& b) {
  Integer na = a.norm2(), nb = b.norm2();
  if (na != nb) return na < nb;
  if (a.is_upper() != b.is_upper()) return a.is_upper();
  return a < b;
}

enum class Convention { Corner, Centered };

inline std::string_view convention_name(Convention c) { return c == Convention::Corner ? "corner" : "centered"; }

/// offset + B_n (Corner, points [0,n)^2) or offset + B̄_n (Centered, points (-n,n)^2).
struct Box {
  Convention convention = Convention::Corner;
  Integer n = 1;
  LatticeVector offset;

  Box() = default;
  Box(Convention c, Integer n_, LatticeVector off = {}) : convention(c), n(std::move(n_)), offset(std::move(off)) {
    if (n <= 0) fail(Errc::invalid_argument, "box size must be positive");
  }

  /// Number of lattice points per row.
  Integer side() const { return convention == Convention::Corner ? n : Integer(2 * n - 1); }
  Integer count() const { Integer s = side(); return s * s; }
  /// Inclusive coordinate extents.
  LatticeVector lo() const {
    Integer d = convention == Convention::Corner ? Integer(0) : Integer(-(n - 1));
    return {offset.x + d, offset.y + d};
  }
  LatticeVector hi() const {
    Integer d = n - 1;
    return {offset.x + d, offset.y + d};
  }
  bool contains(const LatticeVector& p) const {
    LatticeVector a = lo(), b = hi();
    return p.x >= a.x && p.x <= b.x && p.y >= a.y && p.y <= b.y;
  }
  Box translated(const LatticeVector& v) const { return Box(convention, n, offset + v); }

  /// Row-major rank (rows by y, then x) of a contained point.
  Integer rank(const LatticeVector& p) const {
    LatticeVector a = lo();
    return (p.y - a.y) * side() + (p.x - a.x);
  }
  LatticeVector unrank(const Integer& r) const {
    LatticeVector a = lo();
    Integer s = side();
    return {a.x + r % s, a.y + r / s};
  }
  /// Number of points of this box preceding p in row-major order (p arbitrary).
  Integer count_before(const LatticeVector& p) const {
    LatticeVector a = lo(), b = hi();
    Integer s = side();
    Integer rows = p.y - a.y;
    if (rows < 0) rows = 0;
    if (rows > s) rows = s;
    Integer total = rows * s;
    if (p.y >= a.y && p.y <= b.y) {
      Integer cols = p.x - a.x;
      if (cols < 0) cols = 0;
      if (cols > s) cols = s;
      total += cols;
    }
    return total;
  }
  /// Points of this box lying in rows strictly below y.
  Integer count_rows_below(const Integer& y) const {
    Integer s = side();
    Integer rows = y - lo().y;
    if (rows < 0) rows = 0;
    if (rows > s) rows = s;
    return rows * s;
  }

  friend bool operator==(const Box&, const Box&) = default;
};

/// Point of the half-open unit square [0,1)^2.
struct UnitSquarePoint {
  Rational r1 = 0;
  Rational r2 = 0;
  friend bool operator==(const UnitSquarePoint&, const UnitSquarePoint&) = default;
};

struct PlanePoint {
  Rational x = 0;
  Rational y = 0;
  PlanePoint() = default;
  PlanePoint(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
  friend PlanePoint operator+(const PlanePoint& a, const PlanePoint& b) { return {a.x + b.x, a.y + b.y}; }
  friend PlanePoint operator-(const PlanePoint& a, const PlanePoint& b) { return {a.x - b.x, a.y - b.y}; }
  Rational norm2() const { return x * x + y * y; }
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

inline PlanePoint to_plane(const LatticeVector& v) { return {Rational(v.x), Rational(v.y)}; }
inline PlanePoint to_plane(const UnitSquarePoint& u) { return {u.r1, u.r2}; }

/// (⌊v⌋, {v}) componentwise.
inline std::pair<LatticeVector, UnitSquarePoint> floor_frac(const PlanePoint& v) {
  LatticeVector n{floor(v.x), floor(v.y)};
  return {n, UnitSquarePoint{v.x - Rational(n.x), v.y - Rational(n.y)}};
}

}  // namespace rankone

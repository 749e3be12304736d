#pragma once

// Unit suspension of a lattice action: T̂^v(x, r) = (T^{⌊v+r⌋}x, {v+r}) on
// X × [0,1)², evaluated on finite unions of products A × R.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rankone/action.hpp"

namespace rankone {

/// Half-open rectangle [x0,x1) × [y0,y1).
struct Rect {
  Rational x0, x1, y0, y1;

  bool empty() const { return !(x0 < x1 && y0 < y1); }
  Rational area() const { return empty() ? Rational(0) : (x1 - x0) * (y1 - y0); }
  Rational min_side() const { return std::min(x1 - x0, y1 - y0); }
  Rect intersect(const Rect& o) const {
    return {std::max(x0, o.x0), std::min(x1, o.x1), std::max(y0, o.y0), std::min(y1, o.y1)};
  }
  Rect shifted(const PlanePoint& v) const { return {x0 + v.x, x1 + v.x, y0 + v.y, y1 + v.y}; }
  bool in_unit_square() const { return x0 >= 0 && y0 >= 0 && x1 <= 1 && y1 <= 1; }
  std::string str() const {
    return "[" + to_string(x0) + "," + to_string(x1) + ")x[" + to_string(y0) + "," + to_string(y1) + ")";
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct ProductPart {
  IntervalSet set;
  Rect rect;
};

/// Finite union of products, stored as disjoint cells of a rectangular grid.
class ProductSet {
 public:
  ProductSet() = default;
  ProductSet(IntervalSet a, Rect r) {
    for (const Rational* c : {&r.x0, &r.x1, &r.y0, &r.y1})
      if (*c < 0 || *c > 1) fail(Errc::invalid_argument, "rectangle " + r.str() + " leaves the unit square");
    if (!r.empty() && a.measure() > 0) parts_.push_back({std::move(a), std::move(r)});
  }
  static ProductSet from_parts(std::vector<ProductPart> parts) {
    ProductSet p;
    p.parts_ = std::move(parts);
    p.normalize();
    return p;
  }

  const std::vector<ProductPart>& parts() const { return parts_; }
  Rational measure() const {
    Rational s = 0;
    for (const auto& p : parts_) s += p.set.measure() * p.rect.area();
    return s;
  }

  friend Rational intersection_measure(const ProductSet& p, const ProductSet& q) {
    Rational s = 0;
    for (const auto& a : p.parts_)
      for (const auto& b : q.parts_) {
        Rational ar = a.rect.intersect(b.rect).area();
        if (ar > 0) s += (a.set & b.set).measure() * ar;
      }
    return s;
  }

  /// Equality as subsets of X × [0,1)².
  friend bool operator==(const ProductSet& p, const ProductSet& q) {
    std::vector<Rational> xs, ys;
    for (const auto* s : {&p, &q})
      for (const auto& part : s->parts_) {
        xs.insert(xs.end(), {part.rect.x0, part.rect.x1});
        ys.insert(ys.end(), {part.rect.y0, part.rect.y1});
      }
    return p.refine(xs, ys) == q.refine(xs, ys);
  }

 private:
  using Cell = std::pair<std::pair<Rational, Rational>, std::pair<Rational, Rational>>;

  static void sort_unique(std::vector<Rational>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  std::map<Cell, IntervalSet> refine(std::vector<Rational> xs, std::vector<Rational> ys) const {
    sort_unique(xs);
    sort_unique(ys);
    std::map<Cell, IntervalSet> cells;
    for (const auto& part : parts_) {
      auto xa = std::lower_bound(xs.begin(), xs.end(), part.rect.x0);
      auto xb = std::lower_bound(xs.begin(), xs.end(), part.rect.x1);
      auto ya = std::lower_bound(ys.begin(), ys.end(), part.rect.y0);
      auto yb = std::lower_bound(ys.begin(), ys.end(), part.rect.y1);
      for (auto x = xa; x != xb; ++x)
        for (auto y = ya; y != yb; ++y) {
          IntervalSet& cell = cells[{{*x, *(x + 1)}, {*y, *(y + 1)}}];
          cell = cell | part.set;
        }
    }
    for (auto it = cells.begin(); it != cells.end();)
      it = it->second.measure() == 0 ? cells.erase(it) : std::next(it);
    return cells;
  }

  void normalize() {
    std::vector<Rational> xs, ys;
    for (const auto& part : parts_) {
      if (part.rect.empty()) continue;
      xs.insert(xs.end(), {part.rect.x0, part.rect.x1});
      ys.insert(ys.end(), {part.rect.y0, part.rect.y1});
    }
    std::vector<ProductPart> keep;
    for (const auto& p : parts_)
      if (!p.rect.empty() && p.set.measure() > 0) keep.push_back(p);
    parts_ = std::move(keep);
    auto cells = refine(std::move(xs), std::move(ys));
    parts_.clear();
    for (auto& [cell, set] : cells)
      parts_.push_back({std::move(set), Rect{cell.first.first, cell.first.second, cell.second.first, cell.second.second}});
  }

  std::vector<ProductPart> parts_;
};

/// T̂^v at stage m. Each rectangle splits into at most four pieces on which
/// ⌊v + r⌋ is constant.
inline ProductSet hat_apply(const Construction& c, std::size_t m, const PlanePoint& v, const ProductSet& p) {
  std::vector<ProductPart> out;
  for (const auto& part : p.parts()) {
    const Rect s = part.rect.shifted(v);
    auto split = [](const Rational& lo, const Rational& hi) {
      std::vector<std::pair<Integer, std::pair<Rational, Rational>>> pieces;
      const Integer f = floor(lo);
      const Rational cut = Rational(f + 1);
      if (hi <= cut) {
        pieces.push_back({f, {lo, hi}});
      } else {
        pieces.push_back({f, {lo, cut}});
        pieces.push_back({f + 1, {cut, hi}});
      }
      return pieces;
    };
    for (const auto& [nx, xr] : split(s.x0, s.x1))
      for (const auto& [ny, yr] : split(s.y0, s.y1)) {
        const LatticeVector n{nx, ny};
        IntervalSet moved = apply(c, m, n, part.set);
        Rect r{xr.first - Rational(nx), xr.second - Rational(nx), yr.first - Rational(ny), yr.second - Rational(ny)};
        if (moved.measure() > 0 && !r.empty()) out.push_back({std::move(moved), r});
      }
  }
  return ProductSet::from_parts(std::move(out));
}

struct SuspensionWitness {
  LatticeVector anchor;      // lattice witness n
  PlanePoint displacement;   // on-line flow vector u
  bool on_line_exact = false;
  Rational discrepancy2;     // ‖u − n‖²
  std::size_t stage = 1;
  Rational eps;
  Rect shrunk;               // R̃
  IntervalSet core;          // Ã = A ∩ T^{−n}A
  Rational overlap;          // μ×λ(T̂^u(Ã×R̃) ∩ (A×R))
  Rational bound;            // ½·μ(Ã)·area(R̃)
};

/// Flow vector on the line of θ nearest to n. Exact for rational θ; for
/// irrational θ the line is replaced by a rational line through a fine
/// enclosure of tanθ and the discrepancy is certified separately.
inline std::pair<PlanePoint, bool> nearest_on_line(const LatticeVector& n, const Direction& theta) {
  Rational dx, dy;
  bool exact = theta.is_rational();
  if (exact) {
    dx = Rational(theta.rational().p);
    dy = Rational(theta.rational().q);
  } else {
    Bracket t = theta.enclosed().tan.enclose(160);
    dx = 1;
    dy = (t.lo + t.hi) / 2;
  }
  const Rational k = (Rational(n.x) * dx + Rational(n.y) * dy) / (dx * dx + dy * dy);
  return {{k * dx, k * dy}, exact};
}

/// Lifts a lattice witness in the tunnel of width ¼·(min side of R) to a flow
/// displacement along θ returning A × R to itself.
inline std::optional<SuspensionWitness> suspension_witness(const Construction& c, const IntervalSet& a, const Rect& r,
                                                           const Direction& theta, std::size_t depth,
                                                           WitnessSearch search = {}) {
  if (r.empty()) fail(Errc::precondition, "rectangle " + r.str() + " is degenerate");
  if (!r.in_unit_square()) fail(Errc::precondition, "rectangle " + r.str() + " leaves the unit square");
  if (a.measure() <= 0) fail(Errc::precondition, "suspension witness needs a set of positive measure");
  const Rational side = r.min_side();
  const Rational eps = side / 4;
  auto w = find_witness(c, a, theta, eps, depth, search);
  if (!w) return std::nullopt;
  SuspensionWitness out;
  out.anchor = w->u;
  out.stage = depth;
  out.eps = eps;
  std::tie(out.displacement, out.on_line_exact) = nearest_on_line(w->u, theta);
  const PlanePoint d = out.displacement - to_plane(w->u);
  out.discrepancy2 = d.norm2();
  if (!(out.discrepancy2 < eps * eps))
    fail(Errc::invariant_violation, "flow vector drifted out of the tunnel for " + w->u.str());
  out.core = apply(c, depth, -w->u, apply(c, depth, w->u, a) & a);
  out.shrunk = {r.x0 + eps, r.x1 - eps, r.y0 + eps, r.y1 - eps};
  const ProductSet source(out.core, out.shrunk), target(a, r);
  out.overlap = intersection_measure(hat_apply(c, depth, out.displacement, source), target);
  out.bound = out.core.measure() * out.shrunk.area() / 2;
  return out;
}

struct LatticeLift {
  LatticeVector n;
  Rational discrepancy2;  // ‖v − n‖² = ‖j − r‖²
};

/// n = ⌊v + r⌋ for j = {v + r}, with ‖v − n‖ = ‖j − r‖ checked exactly.
inline LatticeLift lattice_from_suspension(const PlanePoint& v, const UnitSquarePoint& r, const UnitSquarePoint& j) {
  for (const Rational* q : {&r.r1, &r.r2, &j.r1, &j.r2})
    if (*q < 0 || *q >= 1) fail(Errc::precondition, "points must lie in [0,1)^2");
  auto [n, f] = floor_frac(v + to_plane(r));
  if (!(f.r1 == j.r1 && f.r2 == j.r2)) fail(Errc::precondition, "j is not the fractional part of v + r");
  const Rational dv = (v - to_plane(n)).norm2(), dj = (to_plane(j) - to_plane(r)).norm2();
  if (dv != dj) fail(Errc::invariant_violation, "discrepancies differ");
  return {n, dv};
}

}  // namespace rankone

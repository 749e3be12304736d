#pragma once

// The partially defined ℤ² action at a finite stage, overlaps, level
// approximation and recurrence-witness search.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "rankone/direction.hpp"
#include "rankone/tower.hpp"

namespace rankone {

/// T^u applied to the part of A defined at stage m: every piece of A lying
/// in the level at v moves to the level at v + u when v + u is in the shape;
/// other pieces are dropped.
inline IntervalSet apply(const Construction& c, std::size_t m, const LatticeVector& u, const IntervalSet& a) {
  const Box& shape = c.stage(m).shape;
  std::vector<RationalInterval> out;
  for (const auto& piece : c.decompose(m, a)) {
    LatticeVector target = piece.position + u;
    if (!shape.contains(target)) continue;
    const Rational shift = c.level_interval(m, target).lo - piece.level.lo;
    out.push_back(piece.part.shifted(shift));
  }
  return IntervalSet::from_unsorted(std::move(out));
}

/// μ(T^u A ∩ B) at stage m.
inline Rational overlap(const Construction& c, const LatticeVector& u, const IntervalSet& a, const IntervalSet& b,
                        std::size_t m) {
  return (apply(c, m, u, a) & b).measure();
}

struct LevelRef {
  std::size_t stage = 1;
  LatticeVector position;
  RationalInterval interval;
  Rational coverage;  // μ(A ∩ interval)
};

/// First stage i ≥ i_min (scanning upward, at most i_max) with a level I
/// satisfying μ(A ∩ I) > (1 − ε)·μ(I).
inline LevelRef approx_level(const Construction& c, const IntervalSet& a, const Rational& eps, std::size_t i_min,
                             std::optional<std::size_t> i_max = std::nullopt) {
  if (!(eps > 0 && eps < 1)) fail(Errc::precondition, "approx_level needs 0 < eps < 1");
  if (a.measure() <= 0) fail(Errc::precondition, "approx_level needs a set of positive measure");
  const std::size_t last = i_max.value_or(c.stage_count());
  for (std::size_t i = std::max<std::size_t>(i_min, 1); i <= std::min(last, c.stage_count()); ++i) {
    const Rational threshold = (Rational(1) - eps) * c.stage(i).level_len;
    std::map<LatticeVector, LevelRef> acc;
    std::vector<LatticeVector> order;
    for (const auto& piece : c.decompose(i, a)) {
      auto [it, fresh] = acc.try_emplace(piece.position, LevelRef{i, piece.position, piece.level, Rational(0)});
      if (fresh) order.push_back(piece.position);
      it->second.coverage += piece.part.length();
    }
    for (const auto& p : order)
      if (acc.at(p).coverage > threshold) return acc.at(p);
  }
  fail(Errc::not_found, "no approximating level found up to stage " + std::to_string(std::min(last, c.stage_count())));
}

struct Witness {
  LatticeVector u;
  std::size_t stage = 1;
  Rational overlap;
};

struct WitnessSearch {
  /// Maximum number of raw tunnel vectors tried after the strong-recurrence
  /// candidates.
  std::size_t enumeration_budget = 4096;
};

/// Lattice points u ≠ 0 with ‖u‖∞ ≤ range in the ε-tunnel of θ, collected
/// along the line's major axis until `budget` points are found, sorted by
/// `norm_order`.
inline std::vector<LatticeVector> tunnel_points(const Direction& theta, const Rational& eps, const Integer& range,
                                                std::size_t budget) {
  // Slope of the line relative to its major axis, enclosed.
  Bracket slope;
  bool x_major = true;
  if (theta.is_rational()) {
    const auto& d = theta.rational();
    x_major = iabs(d.q) <= iabs(d.p);
    Rational s = x_major ? Rational(d.q, d.p) : Rational(d.p, d.q);
    slope = {s, s};
  } else {
    Bracket t = theta.enclosed().tan.enclose(160);
    x_major = rabs(t.lo) <= 1 && rabs(t.hi) <= 1;
    if (x_major) {
      slope = t;
    } else {
      Rational a = Rational(1) / t.hi, b = Rational(1) / t.lo;
      slope = {std::min(a, b), std::max(a, b)};
    }
  }
  // Tunnel half-height measured along the minor axis is ε·√(1+s²) ≤ 2ε.
  const Rational reach = 2 * eps + 1;
  std::vector<LatticeVector> out;
  for (Integer c = 0; c <= range; ++c) {
    for (int sgn : {1, -1}) {
      if (c == 0 && sgn < 0) continue;
      const Integer major = sgn * c;
      Rational m1 = slope.lo * Rational(major), m2 = slope.hi * Rational(major);
      if (m1 > m2) std::swap(m1, m2);
      Integer lo = floor(m1 - reach), hi = ceil(m2 + reach);
      if (lo < -range) lo = -range;
      if (hi > range) hi = range;
      for (Integer minor = lo; minor <= hi; ++minor) {
        LatticeVector v = x_major ? LatticeVector{major, minor} : LatticeVector{minor, major};
        if (v.is_zero() || !in_tunnel(v, theta, eps)) continue;
        out.push_back(std::move(v));
      }
    }
    if (out.size() >= budget) break;
  }
  std::sort(out.begin(), out.end(), norm_order);
  if (out.size() > budget) out.resize(budget);
  return out;
}

/// Depth-bounded search for u in the ε-tunnel of θ with μ(T^u A ∩ A) > 0 at
/// stage `depth`. Strong-recurrence times of the towers A meets are tried
/// first, then raw tunnel vectors by increasing norm. nullopt is a report,
/// not a proof of non-recurrence.
inline std::optional<Witness> find_witness(const Construction& c, const IntervalSet& a, const Direction& theta,
                                           const Rational& eps, std::size_t depth, WitnessSearch opts = {}) {
  if (a.measure() <= 0) fail(Errc::precondition, "find_witness needs a set of positive measure");
  if (eps <= 0) fail(Errc::precondition, "find_witness needs eps > 0");
  c.stage(depth);
  std::set<LatticeVector> tried;
  auto attempt = [&](const LatticeVector& u) -> std::optional<Witness> {
    if (!tried.insert(u).second) return std::nullopt;
    Rational ov = overlap(c, u, a, a, depth);
    if (ov > 0) return Witness{u, depth, ov};
    return std::nullopt;
  };
  for (std::size_t i = depth; i-- > 1;) {
    const IntervalSet support{RationalInterval{Rational(0), c.stage(i).sup}};
    if ((a & support).measure() == 0) continue;
    auto sr = c.strong_recurrence(i, depth - i);
    std::vector<LatticeVector> cands;
    for (const auto& u : sr.vectors)
      if (!tried.contains(u) && in_tunnel(u, theta, eps)) cands.push_back(u);
    std::sort(cands.begin(), cands.end(), norm_order);
    for (const auto& u : cands)
      if (auto w = attempt(u)) return w;
  }
  const Integer range = c.stage(depth).shape.side() - 1;
  for (const auto& u : tunnel_points(theta, eps, range, opts.enumeration_budget))
    if (auto w = attempt(u)) return w;
  return std::nullopt;
}

}  // namespace rankone

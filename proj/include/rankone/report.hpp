#pragma once

// Direction windows of strong-recurrence times: the directions whose
// ε-tunnels a construction hits up to a finite depth. Directions outside
// every window are refuted at that depth; windows are evidence only.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rankone/direction.hpp"
#include "rankone/tower.hpp"

namespace rankone {

struct HitWindow {
  LatticeVector w;  // upper representative
  std::size_t stage = 0;  // first stage j with w a time of τ₁ inside τ_j
  bool covers_all = false;
  std::optional<DirectionWindow> window;  // absent when covers_all
};

struct DirectionReport {
  Rational epsilon;
  std::size_t depth = 0;
  std::vector<HitWindow> hits;
  static constexpr const char* evidence = "depth-bounded";

  /// θ has no ε-tunnel strong-recurrence hit up to the depth.
  bool refutes(const Direction& theta) const {
    for (const auto& h : hits)
      if (h.covers_all || in_tunnel(h.w, theta, epsilon)) return false;
    return true;
  }
  bool hit_by(const Direction& theta) const { return !refutes(theta); }
};

/// Windows for every strong-recurrence time of every tower τ_i, i < depth,
/// inside τ_depth. Times of later towers are differences of slice positions
/// of τ₁ with equal early coordinates, so τ₁'s times cover them all.
inline DirectionReport direction_report(const Construction& c, const Rational& eps, std::size_t depth) {
  if (eps <= 0) fail(Errc::precondition, "report needs eps > 0");
  DirectionReport rep{eps, depth, {}};
  if (depth <= 1) return rep;
  if (depth > c.stage_count())
    fail(Errc::precondition, "depth " + std::to_string(depth) + " exceeds the " + std::to_string(c.stage_count()) +
                                 " built stages");
  std::vector<LatticeVector> known;
  for (std::size_t j = 2; j <= depth; ++j) {
    for (const auto& w : c.strong_recurrence(1, j - 1).vectors) {
      if (!w.is_upper() || std::binary_search(known.begin(), known.end(), w)) continue;
      HitWindow h{w, j, false, std::nullopt};
      if (eps * eps >= Rational(w.norm2())) h.covers_all = true;
      else h.window = direction_window(w, eps);
      rep.hits.push_back(std::move(h));
    }
    known.clear();
    for (const auto& h : rep.hits) known.push_back(h.w);
    std::sort(known.begin(), known.end());
  }
  return rep;
}

/// Every window of `inner` lies inside some window of `outer`; windows of
/// the same time are matched first.
inline bool nested_in(const DirectionReport& inner, const DirectionReport& outer) {
  std::map<LatticeVector, const HitWindow*> by_time;
  bool outer_covers_all = false;
  for (const auto& o : outer.hits) {
    by_time.emplace(o.w, &o);
    outer_covers_all = outer_covers_all || o.covers_all;
  }
  for (const auto& h : inner.hits) {
    if (outer_covers_all) return true;
    if (h.covers_all) return false;
    auto it = by_time.find(h.w);
    if (it != by_time.end() && h.window->arc.subset_of(it->second->window->arc)) continue;
    bool inside = false;
    for (const auto& o : outer.hits)
      if (h.window->arc.subset_of(o.window->arc)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

}  // namespace rankone

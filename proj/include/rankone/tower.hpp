#pragma once

// Cutting-and-stacking tower sequences.
//
// Stages are stored implicitly: a stage records its shape, level length, the
// placements of the previous stage's slices and where its spacers start on
// the real line. Level intervals are computed on demand by walking back
// through the placements, so shapes with astronomically many levels cost
// O(stage · k) per lookup.
//
// Layout rules:
//  * stage 1 lays its levels out consecutively on [0, ℓ₁·|shape|) in
//    row-major order (rows by y, then x);
//  * the j-th placement in list order receives the j-th of the k equal
//    subintervals of every level of the previous stage;
//  * spacers are allocated contiguously after the supremum of all
//    coordinates used so far, in row-major order of their positions.

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rankone/interval_set.hpp"
#include "rankone/lattice.hpp"

namespace rankone {

struct StageParams {
  std::vector<LatticeVector> placements;
  std::size_t k() const { return placements.size(); }
  friend bool operator==(const StageParams&, const StageParams&) = default;
};

/// n₁, ℓ₁ and the per-stage placements; fully determines a rank-one action.
struct ConstructionSpec {
  Convention convention = Convention::Corner;
  Integer n1 = 1;
  Rational level1_len = 1;
  std::vector<StageParams> stages;
  friend bool operator==(const ConstructionSpec&, const ConstructionSpec&) = default;
};

struct TowerStage {
  std::size_t index = 1;
  Box shape;
  Rational level_len = 1;
  /// Base points of the previous stage's slices (empty at stage 1).
  std::vector<LatticeVector> placements;
  /// Shape of the previous stage (equal to `shape` at stage 1).
  Box slice_shape;
  Rational sup_before = 0;  // first coordinate of this stage's spacers
  Rational sup = 0;         // supremum of all coordinates used through this stage
  Integer spacer_count = 0;

  Rational measure() const { return level_len * Rational(shape.count()); }
  Box slice_box(std::size_t j) const { return slice_shape.translated(placements[j]); }
};

inline Box shape_box(Convention c, const Integer& n) { return Box(c, n, {}); }

inline TowerStage init_tower(const ConstructionSpec& spec) {
  if (spec.n1 <= 0) fail(Errc::invalid_argument, "n1 must be positive");
  if (spec.level1_len <= 0) fail(Errc::invalid_argument, "level length must be positive");
  TowerStage st;
  st.index = 1;
  st.shape = shape_box(spec.convention, spec.n1);
  st.slice_shape = st.shape;
  st.level_len = spec.level1_len;
  st.sup_before = 0;
  st.sup = spec.level1_len * Rational(st.shape.count());
  st.spacer_count = 0;
  return st;
}

/// Checks the placement rules for slicing `prev` into k copies.
inline void check_placements(const TowerStage& prev, std::span<const LatticeVector> placements) {
  const std::string where = "stage " + std::to_string(prev.index) + ": ";
  if (placements.empty()) fail(Errc::invalid_argument, where + "no placements");
  if (std::find_if(placements.begin(), placements.end(), [](const auto& p) { return p.is_zero(); }) ==
      placements.end())
    fail(Errc::missing_zero, where + "placements must include the zero vector");
  const Integer side = prev.shape.side();
  for (std::size_t a = 0; a < placements.size(); ++a) {
    if (prev.shape.convention == Convention::Corner && (placements[a].x < 0 || placements[a].y < 0))
      fail(Errc::invalid_argument, where + "corner placement " + placements[a].str() + " leaves the first quadrant");
    for (std::size_t b = a + 1; b < placements.size(); ++b) {
      if ((placements[a] - placements[b]).max_norm() < side)
        fail(Errc::overlapping_boxes, where + "overlapping boxes at " + placements[a].str() + " and " +
                                          placements[b].str());
    }
  }
}

/// Smallest n with the stage shape of size n containing every placed copy.
inline Integer minimal_side(Convention c, const Integer& n, std::span<const LatticeVector> placements) {
  Integer m = 0;
  for (const auto& p : placements) {
    Integer reach = c == Convention::Corner ? std::max(p.x, p.y) : p.max_norm();
    m = std::max(m, reach);
  }
  return m + n;
}

inline TowerStage extend(const TowerStage& prev, std::size_t k, std::span<const LatticeVector> placements) {
  if (k != placements.size())
    fail(Errc::invalid_argument, "stage " + std::to_string(prev.index) + ": k=" + std::to_string(k) +
                                     " but " + std::to_string(placements.size()) + " placements");
  check_placements(prev, placements);
  TowerStage st;
  st.index = prev.index + 1;
  const Convention c = prev.shape.convention;
  st.shape = shape_box(c, minimal_side(c, prev.shape.n, placements));
  st.slice_shape = prev.shape;
  st.level_len = prev.level_len / Rational(Integer(k));
  st.placements.assign(placements.begin(), placements.end());
  st.spacer_count = st.shape.count() - Integer(k) * prev.shape.count();
  st.sup_before = prev.sup;
  st.sup = prev.sup + st.level_len * Rational(st.spacer_count);
  return st;
}

struct StrongRecurrenceSet {
  std::size_t stage = 1;
  std::size_t depth = 0;
  std::vector<LatticeVector> vectors;  // sorted, symmetric, zero excluded
  bool contains(const LatticeVector& v) const { return std::binary_search(vectors.begin(), vectors.end(), v); }
  std::size_t size() const { return vectors.size(); }
};

/// Sorted signed differences q − q' over distinct q, q'.
inline std::vector<LatticeVector> difference_set(const std::vector<LatticeVector>& points) {
  std::vector<LatticeVector> out;
  out.reserve(points.size() * (points.size() > 0 ? points.size() - 1 : 0));
  for (const auto& a : points)
    for (const auto& b : points)
      if (!(a == b)) out.push_back(a - b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class Construction {
 public:
  struct Level {
    LatticeVector position;
    RationalInterval interval;
  };
  struct Piece {
    LatticeVector position;
    RationalInterval level;
    RationalInterval part;
  };

  /// Validates every invariant of `spec` and records every stage.
  explicit Construction(ConstructionSpec spec) : spec_(std::move(spec)) {
    stages_.push_back(init_tower(spec_));
    for (const auto& sp : spec_.stages) stages_.push_back(extend(stages_.back(), sp.k(), sp.placements));
  }

  const ConstructionSpec& spec() const { return spec_; }
  std::size_t stage_count() const { return stages_.size(); }
  const TowerStage& stage(std::size_t i) const {
    check_stage(i);
    return stages_[i - 1];
  }
  Rational stage_measure(std::size_t i) const { return stage(i).measure(); }

  RationalInterval level_interval(std::size_t i, const LatticeVector& v) const {
    const TowerStage& top = stage(i);
    if (!top.shape.contains(v))
      fail(Errc::outside_shape, "position " + v.str() + " outside the shape of stage " + std::to_string(i));
    Rational offset = 0;
    LatticeVector p = v;
    for (std::size_t t = i; t > 1; --t) {
      const TowerStage& st = stages_[t - 1];
      auto j = slice_index(st, p);
      if (!j) {
        Rational lo = st.sup_before + st.level_len * Rational(spacer_rank(st, p)) + offset;
        return {lo, lo + top.level_len};
      }
      offset += st.level_len * Rational(Integer(*j));
      p -= st.placements[*j];
    }
    const TowerStage& first = stages_.front();
    Rational lo = first.level_len * Rational(first.shape.rank(p)) + offset;
    return {lo, lo + top.level_len};
  }

  /// Whether v is a spacer position of stage i (always false at stage 1).
  bool is_spacer(std::size_t i, const LatticeVector& v) const {
    const TowerStage& st = stage(i);
    if (!st.shape.contains(v)) fail(Errc::outside_shape, "position " + v.str() + " outside the shape");
    return i > 1 && !slice_index(st, v);
  }

  /// Stage-i level containing the real coordinate x, if any.
  std::optional<Level> locate(std::size_t i, const Rational& x) const {
    const TowerStage& top = stage(i);
    if (x < 0 || x >= top.sup) return std::nullopt;
    std::size_t s = 1;
    while (x >= stages_[s - 1].sup) ++s;
    LatticeVector p;
    Rational lo;
    if (s == 1) {
      const TowerStage& st = stages_.front();
      Integer r = floor(x / st.level_len);
      p = st.shape.unrank(r);
      lo = st.level_len * Rational(r);
    } else {
      const TowerStage& st = stages_[s - 1];
      Integer r = floor((x - st.sup_before) / st.level_len);
      p = spacer_unrank(st, r);
      lo = st.sup_before + st.level_len * Rational(r);
    }
    for (std::size_t t = s + 1; t <= i; ++t) {
      const TowerStage& st = stages_[t - 1];
      Integer j = floor((x - lo) / st.level_len);
      const auto idx = j.convert_to<std::size_t>();
      p = st.placements[idx] + p;
      lo += st.level_len * Rational(j);
    }
    return Level{p, {lo, lo + top.level_len}};
  }

  /// Splits A along the stage-i levels it meets; mass outside the stage-i
  /// support is dropped.
  std::vector<Piece> decompose(std::size_t i, const IntervalSet& a, std::size_t max_pieces = 1u << 22) const {
    std::vector<Piece> out;
    const Rational& sup = stage(i).sup;
    for (const auto& iv : a.intervals()) {
      Rational cur = iv.lo < 0 ? Rational(0) : iv.lo;
      const Rational end = std::min(iv.hi, sup);
      while (cur < end) {
        auto lvl = locate(i, cur);
        Rational stop = std::min(end, lvl->interval.hi);
        out.push_back(Piece{lvl->position, lvl->interval, {cur, stop}});
        if (out.size() > max_pieces)
          fail(Errc::budget_exhausted, "set meets more than " + std::to_string(max_pieces) + " levels of stage " +
                                           std::to_string(i));
        cur = std::move(stop);
      }
    }
    return out;
  }

  /// Base points of the copies of τ_i inside τ_{i+j}.
  std::vector<LatticeVector> slice_positions(std::size_t i, std::size_t j) const {
    check_stage(i);
    check_stage(i + j);
    std::vector<LatticeVector> q{LatticeVector{}};
    for (std::size_t t = i + 1; t <= i + j; ++t) {
      std::vector<LatticeVector> next;
      next.reserve(q.size() * stages_[t - 1].placements.size());
      for (const auto& a : stages_[t - 1].placements)
        for (const auto& b : q) next.push_back(a + b);
      q = std::move(next);
    }
    std::sort(q.begin(), q.end());
    return q;
  }

  StrongRecurrenceSet strong_recurrence(std::size_t i, std::size_t depth) const {
    return {i, depth, difference_set(slice_positions(i, depth))};
  }

 private:
  void check_stage(std::size_t i) const {
    if (i < 1 || i > stages_.size())
      fail(Errc::precondition, "stage " + std::to_string(i) + " not built (have " + std::to_string(stages_.size()) +
                                   ")");
  }

  static std::optional<std::size_t> slice_index(const TowerStage& st, const LatticeVector& p) {
    for (std::size_t j = 0; j < st.placements.size(); ++j)
      if (st.slice_shape.contains(p - st.placements[j])) return j;
    return std::nullopt;
  }

  static Integer spacer_rank(const TowerStage& st, const LatticeVector& p) {
    Integer r = st.shape.rank(p);
    for (std::size_t j = 0; j < st.placements.size(); ++j) r -= st.slice_box(j).count_before(p);
    return r;
  }

  /// Position of the r-th spacer (0-based, row-major) of a stage.
  static LatticeVector spacer_unrank(const TowerStage& st, const Integer& r) {
    const LatticeVector lo = st.shape.lo(), hi = st.shape.hi();
    const Integer side = st.shape.side();
    auto spacers_below_row = [&](const Integer& y) {
      Integer c = (y - lo.y) * side;
      for (std::size_t j = 0; j < st.placements.size(); ++j) c -= st.slice_box(j).count_rows_below(y);
      return c;
    };
    // Largest row y with spacers_below_row(y) <= r.
    Integer a = lo.y, b = hi.y;
    while (a < b) {
      Integer mid = a + (b - a + 1) / 2;
      if (spacers_below_row(mid) <= r) a = mid; else b = mid - 1;
    }
    const Integer y = a;
    const Integer rem = r - spacers_below_row(y);
    auto spacers_left_of = [&](const Integer& x) {
      Integer c = x - lo.x;
      for (std::size_t j = 0; j < st.placements.size(); ++j) {
        Box bx = st.slice_box(j);
        if (y < bx.lo().y || y > bx.hi().y) continue;
        Integer cols = x - bx.lo().x;
        if (cols < 0) cols = 0;
        if (cols > bx.side()) cols = bx.side();
        c -= cols;
      }
      return c;
    };
    // Smallest x with spacers_left_of(x + 1) > rem.
    a = lo.x;
    b = hi.x;
    while (a < b) {
      Integer mid = a + (b - a) / 2;
      if (spacers_left_of(mid + 1) > rem) b = mid; else a = mid + 1;
    }
    return {a, y};
  }

  ConstructionSpec spec_;
  std::vector<TowerStage> stages_;
};

}  // namespace rankone

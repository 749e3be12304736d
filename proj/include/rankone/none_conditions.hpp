#pragma once

// Per-stage certificate for the non-recurrent construction: every stage
// vector k·v is placed far below and away from all earlier
// strong-recurrence tunnels.

#include <optional>
#include <string>
#include <vector>

#include "rankone/direction.hpp"
#include "rankone/tower.hpp"

namespace rankone {

struct NoneStageRecord {
  std::size_t stage = 0;
  LatticeVector chosen;  // k·v
  Rational m_star;       // minimal slope of earlier strong-recurrence times
  LatticeVector v_star;  // a time realising m_star
  Integer n;             // side of the stage shape
  bool grows = false;          // y > n
  bool halves_slope = false;   // y/x < m*/2
  bool below = false;          // k·v below the v*-tunnel of B_n
  bool clear = false;          // k·v + B_n meets no earlier w-tunnel of B_n
  std::string violation;       // first failing datum, empty when all pass

  bool ok() const { return grows && halves_slope && below && clear; }
};

struct NoneCertificate {
  std::vector<NoneStageRecord> stages;
  bool passed() const {
    for (const auto& s : stages)
      if (!s.ok()) return false;
    return true;
  }
  std::optional<std::size_t> failed_stage() const {
    for (const auto& s : stages)
      if (!s.ok()) return s.stage;
    return std::nullopt;
  }
};

/// Upper representatives of the strong-recurrence times of τ₁ inside τ_i.
inline std::vector<LatticeVector> upper_times(const Construction& c, std::size_t i) {
  std::vector<LatticeVector> out;
  for (const auto& w : c.strong_recurrence(1, i - 1).vectors)
    if (w.is_upper()) out.push_back(w);
  return out;
}

/// Smallest slope y/x over vectors with x > 0 (vertical ones are skipped),
/// ties broken by norm.
inline std::optional<std::pair<Rational, LatticeVector>> minimal_slope(const std::vector<LatticeVector>& times) {
  std::optional<std::pair<Rational, LatticeVector>> best;
  for (const auto& w : times) {
    LatticeVector u = w.x < 0 ? -w : w;
    if (u.x == 0) continue;
    Rational s(u.y, u.x);
    if (!best || s < best->first || (s == best->first && norm_order(u, best->second))) best = {{s, u}};
  }
  return best;
}

/// Re-derives every stage record of a corner spec with two placements
/// {0, k·v} per stage, for stages 2..depth.
inline NoneCertificate verify_none_conditions(const Construction& c, std::size_t depth) {
  const auto& spec = c.spec();
  if (spec.convention != Convention::Corner) fail(Errc::precondition, "non-recurrence certificate needs corner boxes");
  if (depth + 1 > c.stage_count())
    fail(Errc::precondition, "certificate up to stage " + std::to_string(depth) + " needs " +
                                 std::to_string(depth + 1) + " stages");
  NoneCertificate cert;
  for (std::size_t i = 2; i <= depth; ++i) {
    const auto& pl = c.stage(i + 1).placements;
    if (pl.size() != 2 || !pl[0].is_zero())
      fail(Errc::precondition, "stage " + std::to_string(i) + ": expected placements {0, k·v}");
    NoneStageRecord r;
    r.stage = i;
    r.chosen = pl[1];
    const Box box = c.stage(i).shape;
    r.n = box.n;
    const auto times = upper_times(c, i);
    const auto ms = minimal_slope(times);
    if (!ms) fail(Errc::precondition, "stage " + std::to_string(i) + ": no earlier time with finite slope");
    r.m_star = ms->first;
    r.v_star = ms->second;
    const LatticeVector& p = r.chosen;
    auto note = [&](const std::string& s) {
      if (r.violation.empty()) r.violation = s;
    };

    r.grows = p.y > r.n;
    if (!r.grows) note("y=" + p.y.str() + " not above n=" + r.n.str());

    r.halves_slope = p.x > 0 && p.y > 0 && Rational(p.y, p.x) < r.m_star / 2;
    if (!r.halves_slope) note("slope of " + p.str() + " not below m*/2=" + to_string(r.m_star / 2));

    try {
      r.below = point_below_tunnel(p, r.v_star, box);
    } catch (const Error& e) {
      r.below = false;
      note(e.what());
    }
    if (!r.below) note(p.str() + " not below the " + r.v_star.str() + "-tunnel");

    const Box placed = box.translated(p);
    r.clear = true;
    for (const auto& w : times)
      if (box_tunnel_intersects(box, w, placed)) {
        r.clear = false;
        note("box at " + p.str() + " meets the " + w.str() + "-tunnel");
        break;
      }
    cert.stages.push_back(std::move(r));
  }
  return cert;
}

}  // namespace rankone

#pragma once

// Deterministic builders for the two example constructions and for
// user-supplied specs.

#include <functional>
#include <string>
#include <vector>

#include "rankone/direction.hpp"
#include "rankone/none_conditions.hpp"
#include "rankone/tower.hpp"

namespace rankone {

// ---------------------------------------------------------------------------
// Non-recurrent construction.

struct NoneSpecParams {
  std::size_t depth = 1;
  /// Largest ‖k·v‖∞ the candidate search may return.
  Integer candidate_cap = Integer(1) << 256;
  friend bool operator==(const NoneSpecParams&, const NoneSpecParams&) = default;
};

struct NoneBuild {
  ConstructionSpec spec;
  NoneCertificate certificate;
};

namespace detail {

// First candidate (x, y) in order of ‖·‖∞ then lexicographic, with x, y > 0,
// satisfying the four placement conditions against `times` (upper
// representatives) for a box of side n.
//
// y = n + 1 is the smallest admissible height and every condition is a
// lower bound on x for fixed y that only grows with y, so the first
// candidate is (x*, n + 1) with x* the largest of those bounds; rows with
// y = ‖·‖∞ > x would need slope ≥ 1 ≥ m*.
inline LatticeVector none_candidate(const std::vector<LatticeVector>& times, const Integer& n,
                                    const Rational& m_star, const LatticeVector& v_star) {
  if (m_star <= 0) fail(Errc::invariant_violation, "minimal slope is not positive");
  const Integer y = n + 1;
  Integer x = 1;
  auto need_above = [&](const Rational& bound) { x = std::max(x, floor(bound) + 1); };
  need_above(Rational(2 * y) / m_star);                                       // y/x < m*/2
  need_above(Rational(v_star.x * y, v_star.y) + Rational(n - 1));            // below the v*-tunnel
  for (const auto& w : times) {                                               // clear of every tunnel
    if (w.x == 0) {
      need_above(Rational(n - 1));
    } else if (w.y <= 0) {
      fail(Errc::invariant_violation, "time " + w.str() + " has non-positive slope");
    } else {
      need_above(Rational(w.x * y + (n - 1) * (w.x + w.y), w.y));
    }
  }
  return {x, y};
}

}  // namespace detail

inline ConstructionSpec none_stage_one() {
  ConstructionSpec s;
  s.convention = Convention::Corner;
  s.n1 = 2;
  s.level1_len = 1;
  s.stages.push_back({{LatticeVector{0, 0}, LatticeVector{2, 2}}});
  return s;
}

inline NoneBuild build_none(const NoneSpecParams& params) {
  if (params.depth < 1) fail(Errc::invalid_argument, "depth must be at least 1");
  ConstructionSpec spec = none_stage_one();
  // Slice positions of τ₁ in the current top tower, kept alongside the placements.
  std::vector<LatticeVector> q{LatticeVector{0, 0}, LatticeVector{2, 2}};
  Integer n = 4;
  for (std::size_t i = 2; i <= params.depth; ++i) {
    std::vector<LatticeVector> times;
    for (const auto& a : q)
      for (const auto& b : q)
        if (a.x > b.x || (a.x == b.x && a.y > b.y)) times.push_back(a - b);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    auto ms = minimal_slope(times);
    if (!ms) fail(Errc::invariant_violation, "no time with finite slope at stage " + std::to_string(i));
    LatticeVector kv = detail::none_candidate(times, n, ms->first, ms->second);
    if (kv.max_norm() > params.candidate_cap)
      fail(Errc::budget_exhausted, "stage " + std::to_string(i) + ": no candidate within cap " +
                                       params.candidate_cap.str());
    spec.stages.push_back({{LatticeVector{0, 0}, kv}});
    const std::size_t old = q.size();
    for (std::size_t j = 0; j < old; ++j) q.push_back(q[j] + kv);
    n = std::max(kv.x, kv.y) + n;
  }
  NoneBuild out{spec, {}};
  if (params.depth >= 2) {
    Construction c(spec);
    out.certificate = verify_none_conditions(c, params.depth);
    if (!out.certificate.passed())
      fail(Errc::invariant_violation, "generated spec fails its certificate at stage " +
                                          std::to_string(*out.certificate.failed_stage()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Construction avoiding a finite list of irrational directions.

/// i-th point (1-based) of the square spiral over ℤ² ∖ {0}: ring r runs
/// (r,1−r) up to (r,r), then left, down and right.
inline LatticeVector spiral_point(std::size_t index) {
  if (index == 0) fail(Errc::invalid_argument, "spiral index is 1-based");
  std::size_t r = 1;
  while ((2 * r + 1) * (2 * r + 1) - 1 < index) ++r;
  const std::size_t k = index - ((2 * r - 1) * (2 * r - 1) - 1) - 1;
  const long long R = static_cast<long long>(r), K = static_cast<long long>(k);
  if (K < 2 * R) return {R, -R + 1 + K};
  if (K < 4 * R) return {R - 1 - (K - 2 * R), R};
  if (K < 6 * R) return {-R, R - 1 - (K - 4 * R)};
  return {-R + 1 + (K - 6 * R), -R};
}

struct AllSpecParams {
  std::vector<Direction> alphas;
  std::size_t depth = 1;
  Integer n1 = 2;
  /// ε_i for stages 1, 2, …; empty means ε_i = 2^{−i}.
  std::vector<Rational> eps_sequence;
  /// Enumeration of ℤ² ∖ {0}; empty means the square spiral.
  std::function<LatticeVector(std::size_t)> enumeration;

  Rational eps(std::size_t i) const {
    if (eps_sequence.empty()) return pow2(-static_cast<long>(i));
    if (i > eps_sequence.size()) fail(Errc::invalid_argument, "eps sequence shorter than the depth");
    return eps_sequence[i - 1];
  }
  LatticeVector point(std::size_t i) const { return enumeration ? enumeration(i) : spiral_point(i); }
};

/// Strict separation of α from one stage window, with the enclosures used.
struct ExclusionRecord {
  std::size_t stage = 0;
  std::size_t alpha_index = 0;
  LatticeVector w;
  Rational eps;
  Bracket lo, hi, alpha;  // pseudo-angle enclosures
  Rational gap;           // distance between α's enclosure and the arc's
  unsigned bits = 0;
};

struct StageChoice {
  std::size_t stage = 0;
  LatticeVector u;
  Integer t;
  Rational eps;
};

struct AllBuild {
  ConstructionSpec spec;
  std::vector<StageChoice> choices;
  std::vector<ExclusionRecord> audit;
};

namespace detail {

// Gap certificate for α outside the closed arc [lo, hi] traversed
// counter-clockwise, refined up to the precision cap.
inline std::optional<ExclusionRecord> separate(const DirectionArc& arc, const AngleCoord& alpha) {
  const unsigned cap = precision_cap();
  for (unsigned bits = 32;; bits = std::min(cap, bits * 2)) {
    auto lo = arc.lo.bracket(bits), hi = arc.hi.bracket(bits), a = alpha.bracket(bits);
    if (lo && hi && a) {
      ExclusionRecord r;
      r.lo = *lo;
      r.hi = *hi;
      r.alpha = *a;
      r.bits = bits;
      if (lo->hi < hi->lo) {  // arc does not wrap past the horizontal direction
        if (a->hi < lo->lo) r.gap = lo->lo - a->hi;
        else if (a->lo > hi->hi) r.gap = a->lo - hi->hi;
      } else if (hi->hi < lo->lo && hi->hi < a->lo && a->hi < lo->lo) {
        r.gap = std::min(a->lo - hi->hi, lo->lo - a->hi);
      }
      if (r.gap > 0) return r;
    }
    if (bits >= cap) return std::nullopt;
  }
}

}  // namespace detail

inline AllBuild build_all(const AllSpecParams& params) {
  if (params.depth < 1) fail(Errc::invalid_argument, "depth must be at least 1");
  for (const auto& a : params.alphas)
    if (a.is_rational()) fail(Errc::invalid_argument, "excluded direction " + a.str() + " is rational");
  AllBuild out;
  out.spec.convention = Convention::Centered;
  out.spec.n1 = params.n1;
  out.spec.level1_len = 1;
  Integer n = params.n1;
  for (std::size_t i = 1; i <= params.depth; ++i) {
    const LatticeVector u = params.point(i);
    if (u.is_zero()) fail(Errc::invalid_argument, "enumeration produced the zero vector");
    const Rational eps = params.eps(i);
    if (eps <= 0) fail(Errc::invalid_argument, "eps must be positive");
    Integer t = ceil(Rational(2 * n - 1, u.max_norm()));
    std::vector<ExclusionRecord> recs;
    for (;; ++t) {
      const LatticeVector w = t * u;
      recs.clear();
      bool ok = Rational(w.norm2()) > eps * eps;
      if (ok) {
        const DirectionWindow win = direction_window(w, eps);
        for (std::size_t j = 0; j < params.alphas.size() && ok; ++j) {
          const Direction& a = params.alphas[j];
          if (win.contains(a)) {
            ok = false;
            break;
          }
          if (in_tunnel(w, a, eps))
            fail(Errc::invariant_violation, "window and tunnel disagree for " + w.str() + " and " + a.str());
          auto rec = detail::separate(win.arc, a.coord());
          if (!rec)
            fail(Errc::undecidable, "stage " + std::to_string(i) + ": cannot certify separation of alpha " +
                                        a.str() + " at precision 2^-" + std::to_string(precision_cap()));
          rec->stage = i;
          rec->alpha_index = j;
          rec->w = w;
          rec->eps = eps;
          recs.push_back(std::move(*rec));
        }
      }
      if (ok) break;
    }
    const LatticeVector w = t * u;
    out.spec.stages.push_back({{LatticeVector{0, 0}, w}});
    out.choices.push_back({i, u, t, eps});
    for (auto& r : recs) out.audit.push_back(std::move(r));
    n = w.max_norm() + n;
  }
  return out;
}

/// Validates a user spec; stages are laid out on demand.
inline Construction build_custom(const ConstructionSpec& spec) { return Construction(spec); }

}  // namespace rankone

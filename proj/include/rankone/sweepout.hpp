#pragma once

// Sweeping-out certificates: disjoint pieces A_i of a target set moved by
// tunnel vectors onto disjoint subsets of the same set, covering more than
// an α fraction on both sides.

#include <optional>
#include <string>
#include <vector>

#include "rankone/action.hpp"

namespace rankone {

struct SweepPiece {
  IntervalSet set;  // A_i
  LatticeVector v;
  std::size_t stage = 1;
  IntervalSet image;  // T^{v_i} A_i at `stage`
};

struct SweepOutCertificate {
  IntervalSet target;
  std::vector<SweepPiece> pieces;
  Rational alpha;
  Rational epsilon;
  Direction theta;
  bool complete = false;

  Rational covered() const {
    Rational s = 0;
    for (const auto& p : pieces) s += p.set.measure();
    return s;
  }
  /// Fraction of the target covered by the pieces.
  Rational achieved() const { return target.measure() > 0 ? covered() / target.measure() : Rational(0); }
};

struct SweepBudget {
  std::size_t max_pieces = 64;
  std::size_t depth = 0;  // 0: last built stage
  WitnessSearch search;
};

inline void check_alpha(const Rational& alpha) {
  if (!(alpha > 0 && alpha < Rational(1, 2))) fail(Errc::invalid_argument, "alpha must lie in (0, 1/2)");
}

/// Chain construction: each step takes a tunnel vector v returning the
/// unclaimed rest A′, claims Â = A′ ∩ T^v A′ and the piece T^{−v}Â.
inline SweepOutCertificate greedy_sweepout(const Construction& c, const IntervalSet& a, const Direction& theta,
                                           const Rational& eps, const Rational& alpha, SweepBudget budget = {}) {
  check_alpha(alpha);
  if (a.measure() <= 0) fail(Errc::precondition, "sweep-out needs a set of positive measure");
  if (eps <= 0) fail(Errc::precondition, "sweep-out needs eps > 0");
  const std::size_t m = budget.depth ? budget.depth : c.stage_count();
  SweepOutCertificate cert{a, {}, alpha, eps, theta, false};
  const Rational goal = alpha * a.measure();
  IntervalSet claimed;
  Rational covered = 0;
  while (cert.pieces.size() < budget.max_pieces) {
    IntervalSet rest = a - claimed;
    if (rest.measure() == 0) break;
    auto w = find_witness(c, rest, theta, eps, m, budget.search);
    if (!w) break;
    IntervalSet hat = rest & apply(c, m, w->u, rest);
    IntervalSet piece = apply(c, m, -w->u, hat);
    claimed = claimed | hat | piece;
    covered += piece.measure();
    cert.pieces.push_back({std::move(piece), w->u, m, std::move(hat)});
    if (covered > goal) {
      cert.complete = true;
      break;
    }
  }
  return cert;
}

struct SweepCheck {
  bool ok = true;
  std::string reason;  // machine-readable code, empty when ok
  std::string detail;
  explicit operator bool() const { return ok; }
};

/// Re-checks every certificate property by exact arithmetic.
inline SweepCheck verify_sweepout(const Construction& c, const SweepOutCertificate& cert, const IntervalSet& a) {
  auto bad = [](std::string reason, std::string detail) { return SweepCheck{false, std::move(reason), std::move(detail)}; };
  if (!(cert.alpha > 0 && cert.alpha < Rational(1, 2))) return bad("alpha range", "alpha=" + to_string(cert.alpha));
  if (!(cert.epsilon > 0)) return bad("epsilon range", "epsilon=" + to_string(cert.epsilon));
  if (!(cert.target == a)) return bad("target mismatch", cert.target.str() + " vs " + a.str());
  if (a.measure() <= 0) return bad("empty target", a.str());
  if (cert.pieces.empty()) return bad("coverage", "no pieces");
  Rational sum = 0, image_sum = 0;
  IntervalSet seen, seen_images;
  for (std::size_t i = 0; i < cert.pieces.size(); ++i) {
    const auto& p = cert.pieces[i];
    const std::string at = "piece " + std::to_string(i + 1);
    if (p.v.is_zero()) return bad("zero vector", at);
    if (!in_tunnel(p.v, cert.theta, cert.epsilon))
      return bad("tunnel violation", at + ": " + p.v.str() + " outside the tunnel");
    if (p.stage < 1 || p.stage > c.stage_count()) return bad("stage range", at);
    if (p.set.measure() <= 0) return bad("empty piece", at);
    if (!p.set.subset_of(a)) return bad("not subset", at);
    if (!p.set.disjoint_from(seen)) return bad("disjointness", at + " overlaps an earlier piece");
    const IntervalSet img = apply(c, p.stage, p.v, p.set);
    if (img.measure() != p.set.measure()) return bad("undefined", at + " is not fully defined at its stage");
    if (!(img == p.image)) return bad("image mismatch", at + ": recorded " + p.image.str() + ", got " + img.str());
    if (!img.subset_of(a)) return bad("image not subset", at);
    if (!img.disjoint_from(seen_images)) return bad("image disjointness", at + " image overlaps an earlier image");
    seen = seen | p.set;
    seen_images = seen_images | img;
    sum += p.set.measure();
    image_sum += img.measure();
  }
  const Rational goal = cert.alpha * a.measure();
  if (!(sum > goal)) return bad("coverage", "pieces cover " + to_string(sum) + ", need > " + to_string(goal));
  if (!(image_sum > goal))
    return bad("image coverage", "images cover " + to_string(image_sum) + ", need > " + to_string(goal));
  if (sum != image_sum) return bad("measure mismatch", to_string(sum) + " vs " + to_string(image_sum));
  return {};
}

/// Given C close to the target set, an index i with more than half of both
/// A_i and its image inside C.
inline std::size_t transfer_witness(const Construction& c, const SweepOutCertificate& cert, const IntervalSet& cset,
                                    const Rational& eps) {
  const IntervalSet& a = cert.target;
  if (!(eps > 0 && eps < Rational(1, 16))) fail(Errc::precondition, "transfer needs 0 < eps < 1/16");
  if (!(cert.alpha > Rational(1, 4))) fail(Errc::precondition, "transfer needs alpha > 1/4");
  if (!(symmetric_difference(a, cset).measure() < eps * a.measure()))
    fail(Errc::precondition, "C is not within eps of the target set");
  if (auto chk = verify_sweepout(c, cert, a); !chk)
    fail(Errc::precondition, "certificate does not verify: " + chk.reason);
  for (std::size_t i = 0; i < cert.pieces.size(); ++i) {
    const auto& p = cert.pieces[i];
    if (2 * (p.set & cset).measure() > p.set.measure() && 2 * (p.image & cset).measure() > p.image.measure())
      return i;
  }
  fail(Errc::invariant_violation, "no piece keeps half its mass in C despite the preconditions");
}

}  // namespace rankone

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rankone/gallery.hpp"
#include "rankone/report.hpp"
#include "rankone/sweepout.hpp"

using namespace rankone;
using namespace fixtures;

TEST(GreedySweepout, WorkedExample) {
  Construction c(worked_spec());
  IntervalSet a = parse_interval_set("[0,1)");
  auto cert = greedy_sweepout(c, a, direction_of(V(1, 1)), Q(1, 2), parse_rational("0.49"));
  ASSERT_TRUE(cert.complete);
  ASSERT_EQ(cert.pieces.size(), 1u);
  EXPECT_EQ(cert.pieces[0].set, parse_interval_set("[0,1/2)"));
  EXPECT_EQ(cert.pieces[0].v, V(2, 2));
  EXPECT_EQ(cert.pieces[0].image, parse_interval_set("[1/2,1)"));
  EXPECT_EQ(cert.achieved(), Q(1, 2));
  auto chk = verify_sweepout(c, cert, a);
  EXPECT_TRUE(chk.ok) << chk.reason << " " << chk.detail;
}

TEST(GreedySweepout, TinyAlphaSinglePiece) {
  Construction c(worked_spec());
  IntervalSet a = parse_interval_set("[0,1)");
  auto cert = greedy_sweepout(c, a, direction_of(V(1, 1)), Q(1, 2), Q(1, 1000000));
  EXPECT_TRUE(cert.complete);
  EXPECT_EQ(cert.pieces.size(), 1u);
  EXPECT_THROW(greedy_sweepout(c, a, direction_of(V(1, 1)), Q(1, 2), Q(1, 2)), Error);
  EXPECT_THROW(greedy_sweepout(c, a, direction_of(V(1, 1)), Q(1, 2), Q(0)), Error);
}

TEST(GreedySweepout, NoneSpecSpacerExhaustsBudget) {
  auto b = build_none({4});
  Construction c(b.spec);
  IntervalSet spacer{c.level_interval(2, V(2, 0))};
  ASSERT_TRUE(c.is_spacer(2, V(2, 0)));
  for (auto th : {direction_of(V(1, 0)), direction_of(V(3, 1)), Direction::tan_sqrt(2)}) {
    auto cert = greedy_sweepout(c, spacer, th, Q(1, 10), Q(1, 4), {8, 4, {}});
    EXPECT_FALSE(cert.complete);
    EXPECT_EQ(cert.achieved(), 0);
  }
}

TEST(VerifySweepout, RejectsTamperedCertificates) {
  Construction c(worked_spec());
  IntervalSet a = parse_interval_set("[0,1)");
  auto cert = greedy_sweepout(c, a, direction_of(V(1, 1)), Q(1, 2), parse_rational("0.49"));
  auto moved = cert;
  moved.pieces[0].v = V(2, 0);
  EXPECT_EQ(verify_sweepout(c, moved, a).reason, "tunnel violation");
  auto twice = cert;
  twice.pieces.push_back(twice.pieces[0]);
  EXPECT_EQ(verify_sweepout(c, twice, a).reason, "disjointness");
  auto alpha = cert;
  alpha.alpha = Q(1, 2);
  EXPECT_EQ(verify_sweepout(c, alpha, a).reason, "alpha range");
  auto short_cover = cert;
  short_cover.alpha = Q(49, 100);
  short_cover.pieces[0].set = parse_interval_set("[0,1/4)");
  short_cover.pieces[0].image = parse_interval_set("[1/2,3/4)");
  EXPECT_EQ(verify_sweepout(c, short_cover, a).reason, "coverage");
  auto wrong_image = cert;
  wrong_image.pieces[0].image = parse_interval_set("[1/2,3/4)");
  EXPECT_EQ(verify_sweepout(c, wrong_image, a).reason, "image mismatch");
  EXPECT_EQ(verify_sweepout(c, cert, parse_interval_set("[0,2)")).reason, "target mismatch");
}

TEST(TransferWitness, Examples) {
  ConstructionSpec s = worked_spec();
  s.stages.push_back({{V(0, 0), V(4, 0), V(8, 0)}});
  s.stages.push_back({{V(0, 0), V(12, 0), V(24, 0)}});
  Construction c(s);
  IntervalSet a{c.level_interval(1, V(0, 0))};
  auto cert = greedy_sweepout(c, a, direction_of(V(1, 0)), Q(1, 2), Q(2, 5));
  ASSERT_TRUE(verify_sweepout(c, cert, a).ok);
  EXPECT_LT(transfer_witness(c, cert, a, Q(1, 100)), cert.pieces.size());
  // Remove a sliver of measure ε·μ(A)/2 from inside the first piece.
  const Rational lo = cert.pieces[0].set.intervals()[0].lo;
  IntervalSet sliver{RationalInterval{lo, lo + Q(1, 200)}};
  std::size_t i = transfer_witness(c, cert, a - sliver, Q(1, 100));
  const auto& p = cert.pieces[i];
  IntervalSet cset = a - sliver;
  EXPECT_GT(2 * (p.set & cset).measure(), p.set.measure());
  EXPECT_GT(2 * (p.image & cset).measure(), p.image.measure());
  EXPECT_THROW(transfer_witness(c, cert, IntervalSet{RationalInterval{Q(50), Q(51)}}, Q(1, 100)), Error);
  EXPECT_THROW(transfer_witness(c, cert, a, Q(1, 10)), Error);
}

TEST(DirectionReport, DepthZeroIsEmpty) {
  Construction c(worked_spec());
  auto r = direction_report(c, Q(1, 100), 0);
  EXPECT_TRUE(r.hits.empty());
  EXPECT_TRUE(r.refutes(direction_of(V(1, 1))));
  EXPECT_TRUE(r.refutes(Direction::tan_sqrt(3)));
}

TEST(DirectionReport, DiagonalWindowInAllSpec) {
  AllSpecParams p;
  p.depth = 3;
  Construction c(build_all(p).spec);
  auto r = direction_report(c, Q(1, 100), 3);
  bool diagonal = false;
  for (const auto& h : r.hits)
    if (h.w.y == h.w.x) {
      diagonal = true;
      EXPECT_TRUE(h.window->contains(direction_of(V(1, 1))));
    }
  EXPECT_TRUE(diagonal);
  EXPECT_TRUE(r.hit_by(direction_of(V(1, 1))));
}

TEST(DirectionReport, NoneSpecWindowsShrinkAndAvoidHorizontal) {
  auto b = build_none({6});
  Construction c(b.spec);
  auto r = direction_report(c, Q(1, 10), 6);
  double prev_max = 10;
  for (std::size_t j = 2; j <= 6; ++j) {
    double widest = 0;
    for (const auto& h : r.hits)
      if (h.stage == j) widest = std::max(widest, h.window->half_width());
    EXPECT_LT(widest, prev_max);
    prev_max = widest;
  }
  // Stage-1 time (2,2) has a window away from 0 as do all later ones.
  EXPECT_TRUE(r.refutes(direction_of(V(1, 0))));
}

TEST(DirectionReport, NestedInEpsilon) {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 30; ++it) {
    Construction c(random_spec(rng));
    const std::size_t d = c.stage_count();
    std::vector<DirectionReport> reps;
    for (int k = 1; k <= 4; ++k) reps.push_back(direction_report(c, pow2(-k), d));
    for (int k = 0; k + 1 < 4; ++k) {
      EXPECT_TRUE(nested_in(reps[k + 1], reps[k]));
    }
    // Report windows agree with refutation for sampled directions.
    for (long long x = -5; x <= 5; ++x)
      for (long long y = 0; y <= 5; ++y) {
        if (y == 0 && x <= 0) continue;
        Direction th = direction_of(V(x, y));
        bool in_some = false;
        for (const auto& h : reps[1].hits) in_some = in_some || h.covers_all || h.window->contains(th);
        EXPECT_EQ(in_some, reps[1].hit_by(th));
      }
  }
}

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rankone/action.hpp"
#include "rankone/gallery.hpp"

using namespace rankone;
using namespace fixtures;

namespace {

IntervalSet level_set(const Construction& c, std::size_t i, const LatticeVector& v) {
  return IntervalSet{c.level_interval(i, v)};
}

IntervalSet random_subset(std::mt19937_64& rng, const Rational& sup) {
  std::uniform_int_distribution<int> k(1, 4), d(0, 96);
  std::vector<RationalInterval> v;
  for (int j = k(rng); j > 0; --j) {
    Rational a = sup * Rational(d(rng), 96), b = sup * Rational(d(rng), 96);
    if (a == b) continue;
    v.push_back({std::min(a, b), std::max(a, b)});
  }
  return IntervalSet::from_unsorted(v);
}

}  // namespace

TEST(Apply, WorkedExamples) {
  Construction c(worked_spec());
  IntervalSet a = parse_interval_set("[0,1/2)");
  EXPECT_EQ(apply(c, 2, V(2, 2), a), parse_interval_set("[1/2,1)"));
  EXPECT_EQ(apply(c, 2, V(2, 2), parse_interval_set("[1/2,1)")), IntervalSet());
  IntervalSet any = parse_interval_set("[1/3,5) [6,15/2)");
  EXPECT_EQ(apply(c, 2, V(0, 0), any), any);
}

TEST(Overlap, WorkedExamples) {
  Construction c(worked_spec());
  IntervalSet one = parse_interval_set("[0,1)");
  EXPECT_EQ(overlap(c, V(2, 2), one, one, 2), Q(1, 2));
  EXPECT_EQ(overlap(c, V(0, 0), one, one, 2), Q(1));
  EXPECT_EQ(overlap(c, V(1, 0), one, parse_interval_set("[5,6)"), 2), 0);
}

TEST(ApproxLevel, Examples) {
  ConstructionSpec s = worked_spec();
  s.stages.push_back({{V(0, 0), V(13, 5)}});
  Construction c(s);
  // A full stage-3 level.
  IntervalSet l3 = level_set(c, 3, V(7, 9));
  auto r = approx_level(c, l3, Q(1, 10), 3);
  EXPECT_EQ(r.stage, 3u);
  EXPECT_EQ(r.position, V(7, 9));
  // Union of the stage-2 spacers.
  IntervalSet spacers;
  for (long long y = 0; y < 4; ++y)
    for (long long x = 0; x < 4; ++x)
      if (c.is_spacer(2, V(x, y))) spacers = spacers | level_set(c, 2, V(x, y));
  EXPECT_EQ(spacers.measure(), 4);
  auto sp = approx_level(c, spacers, Q(1, 10), 2);
  EXPECT_EQ(sp.stage, 2u);
  EXPECT_TRUE(c.is_spacer(2, sp.position));
  EXPECT_EQ(sp.coverage, Q(1, 2));
  // Left half of a stage-1 level: found at stage 2, never claimed at stage 1.
  auto half = approx_level(c, parse_interval_set("[0,1/2)"), Q(1, 10), 1);
  EXPECT_EQ(half.stage, 2u);
  EXPECT_TRUE(RationalInterval(half.interval).lo >= 0 && half.interval.hi <= Q(1, 2));
  EXPECT_THROW(approx_level(c, parse_interval_set("[0,1/3)"), Q(1, 10), 1, 1), Error);
  try {
    approx_level(c, parse_interval_set("[0,1/3)"), Q(1, 10), 1, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_found);
    EXPECT_NE(std::string(e.what()).find("up to stage 1"), std::string::npos);
  }
}

TEST(FindWitness, WorkedSpec) {
  Construction c(worked_spec());
  auto w = find_witness(c, parse_interval_set("[0,1)"), direction_of(V(1, 1)), Q(1, 2), 2);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->u == V(2, 2) || w->u == V(-2, -2));
  EXPECT_EQ(w->overlap, Q(1, 2));
  EXPECT_THROW(find_witness(c, IntervalSet(), direction_of(V(1, 1)), Q(1, 2), 2), Error);
}

TEST(FindWitness, NoneSpecSpacerHasNoHorizontalReturn) {
  auto b = build_none({4});
  Construction c(b.spec);
  IntervalSet spacer;
  for (long long y = 0; y < 4 && spacer.intervals().empty(); ++y)
    for (long long x = 0; x < 4; ++x)
      if (c.is_spacer(2, V(x, y))) {
        spacer = level_set(c, 2, V(x, y));
        break;
      }
  const Direction horizontal = direction_of(V(1, 0));
  for (std::size_t depth = 2; depth <= 4; ++depth) {
    EXPECT_FALSE(find_witness(c, spacer, horizontal, Q(1), depth).has_value());
    // Exhaustive: every u in the stage shape difference range, in the tunnel.
    const Integer side = c.stage(depth).shape.side();
    if (side > 200) continue;
    const long long s = side.convert_to<long long>();
    for (long long x = -(s - 1); x <= s - 1; ++x)
      for (long long y = -1; y <= 1; ++y) {
        LatticeVector u = V(x, y);
        if (u.is_zero() || !in_tunnel(u, horizontal, Q(1))) continue;
        EXPECT_EQ(overlap(c, u, spacer, spacer, depth), 0) << u.str();
      }
  }
}

TEST(TunnelPoints, MatchesBruteForce) {
  for (auto th : {direction_of(V(1, 0)), direction_of(V(3, 5)), direction_of(V(-7, 2)), Direction::tan_sqrt(2),
                  Direction::tan_sqrt(5, true), Direction::tan_sqrt(Q(1, 3))}) {
    for (Rational eps : {Q(1, 3), Q(2), Q(1, 50)}) {
      auto pts = tunnel_points(th, eps, Integer(30), 1u << 20);
      std::vector<LatticeVector> brute;
      for (long long x = -30; x <= 30; ++x)
        for (long long y = -30; y <= 30; ++y)
          if ((x || y) && in_tunnel(V(x, y), th, eps)) brute.push_back(V(x, y));
      std::sort(brute.begin(), brute.end(), norm_order);
      EXPECT_EQ(pts, brute) << th.str() << " " << eps;
    }
  }
}

TEST(ActionInvariants, RandomSpecs) {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 80; ++it) {
    Construction c(random_spec(rng));
    const std::size_t m = c.stage_count();
    const Rational sup = c.stage(m).sup;
    const Integer side = c.stage(m).shape.side();
    std::uniform_int_distribution<long long> ud(-side.convert_to<long long>(), side.convert_to<long long>());
    for (int k = 0; k < 10; ++k) {
      IntervalSet a = random_subset(rng, sup), b = random_subset(rng, sup);
      LatticeVector u = V(ud(rng), ud(rng));
      IntervalSet img = apply(c, m, u, a);
      EXPECT_LE(img.measure(), (a & IntervalSet{RationalInterval{Q(0), sup}}).measure());
      // Inverse consistency on the fully defined part.
      IntervalSet defined = apply(c, m, -u, img);
      EXPECT_EQ(apply(c, m, u, defined), img);
      EXPECT_TRUE(defined.subset_of(a));
      EXPECT_EQ(defined.measure(), img.measure());
      EXPECT_EQ(overlap(c, u, a, b, m), overlap(c, -u, b, a, m));
      for (std::size_t j = 1; j < m; ++j) EXPECT_LE(overlap(c, u, a, b, j), overlap(c, u, a, b, j + 1));
    }
  }
}

TEST(ActionInvariants, LevelReturnsExactlyOnStrongRecurrence) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 40; ++it) {
    Construction c(random_spec(rng));
    const std::size_t m = c.stage_count();
    const long long side = c.stage(m).shape.side().convert_to<long long>();
    if (side > 40) continue;
    for (std::size_t i = 1; i < m; ++i) {
      const auto sr = c.strong_recurrence(i, m - i);
      const Box& b = c.stage(i).shape;
      IntervalSet lvl = level_set(c, i, b.lo());
      for (long long x = -(side - 1); x <= side - 1; ++x)
        for (long long y = -(side - 1); y <= side - 1; ++y) {
          LatticeVector u = V(x, y);
          if (u.is_zero()) continue;
          EXPECT_EQ(overlap(c, u, lvl, lvl, m) > 0, sr.contains(u)) << u.str();
        }
      // Every placement difference returns a positive overlap.
      for (const auto& u : sr.vectors) EXPECT_GT(overlap(c, u, lvl, lvl, m), 0);
    }
  }
}

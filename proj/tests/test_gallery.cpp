#include <gtest/gtest.h>

#include <set>

#include "helpers.hpp"
#include "rankone/gallery.hpp"

using namespace rankone;
using namespace fixtures;

namespace {

ConstructionSpec with_stage2(LatticeVector kv) {
  ConstructionSpec s = none_stage_one();
  s.stages.push_back({{V(0, 0), kv}});
  return s;
}

// Literal enumeration in ‖·‖∞-then-lex order, testing the four conditions
// with the geometry predicates.
LatticeVector brute_force_candidate(const Construction& c, std::size_t i, long long limit) {
  const Box box = c.stage(i).shape;
  const auto times = upper_times(c, i);
  const auto ms = minimal_slope(times);
  for (long long r = 1; r <= limit; ++r) {
    std::vector<LatticeVector> ring;
    for (long long x = 1; x <= r; ++x)
      for (long long y = 1; y <= r; ++y)
        if (std::max(x, y) == r) ring.push_back(V(x, y));
    std::sort(ring.begin(), ring.end());
    for (const auto& p : ring) {
      if (!(p.y > box.n)) continue;
      if (!(Rational(p.y, p.x) < ms->first / 2)) continue;
      if (!point_below_tunnel(p, ms->second, box)) continue;
      bool clear = true;
      for (const auto& w : times)
        if (box_tunnel_intersects(box, w, box.translated(p))) clear = false;
      if (clear) return p;
    }
  }
  return {};
}

}  // namespace

TEST(NoneConditions, StageTwoExamples) {
  auto good = verify_none_conditions(Construction(with_stage2(V(13, 5))), 2);
  ASSERT_EQ(good.stages.size(), 1u);
  const auto& r = good.stages[0];
  EXPECT_TRUE(r.grows && r.halves_slope && r.below && r.clear);
  EXPECT_EQ(r.m_star, 1);
  EXPECT_EQ(r.n, 4);
  EXPECT_TRUE(good.passed());

  auto bad = verify_none_conditions(Construction(with_stage2(V(11, 5))), 2);
  EXPECT_FALSE(bad.passed());
  EXPECT_EQ(*bad.failed_stage(), 2u);
  EXPECT_TRUE(bad.stages[0].grows && bad.stages[0].halves_slope && bad.stages[0].below);
  EXPECT_FALSE(bad.stages[0].clear);
  EXPECT_NE(bad.stages[0].violation.find("(2,2)-tunnel"), std::string::npos);

  auto flat = verify_none_conditions(Construction(with_stage2(V(40, 4))), 2);
  EXPECT_FALSE(flat.stages[0].grows);
  EXPECT_TRUE(flat.stages[0].halves_slope);
}

TEST(BuildNone, DepthOneAndTwo) {
  auto d1 = build_none({1});
  ASSERT_EQ(d1.spec.stages.size(), 1u);
  EXPECT_EQ(d1.spec.stages[0].placements, (std::vector<LatticeVector>{V(0, 0), V(2, 2)}));
  EXPECT_EQ(Construction(d1.spec).stage(2).shape.n, 4);
  EXPECT_TRUE(d1.certificate.stages.empty());

  auto d2 = build_none({2});
  ASSERT_EQ(d2.spec.stages.size(), 2u);
  EXPECT_EQ(d2.spec.stages[1].placements[1], V(12, 5));
  EXPECT_TRUE(verify_none_conditions(Construction(d2.spec), 2).passed());
}

TEST(BuildNone, MatchesBruteForceOrder) {
  auto b = build_none({3});
  Construction c(b.spec);
  EXPECT_EQ(brute_force_candidate(c, 2, 40), b.spec.stages[1].placements[1]);
  EXPECT_EQ(brute_force_candidate(c, 3, 200), b.spec.stages[2].placements[1]);
  EXPECT_EQ(b.spec.stages[2].placements[1], V(122, 17));
}

TEST(BuildNone, KnownGrowthAndSlopes) {
  auto b = build_none({6});
  Construction c(b.spec);
  std::vector<long long> sides;
  for (std::size_t i = 1; i <= c.stage_count(); ++i) sides.push_back(c.stage(i).shape.n.convert_to<long long>());
  sides.pop_back();
  EXPECT_EQ(sides, (std::vector<long long>{2, 4, 16, 138, 3256, 175370}));
  const auto& cert = b.certificate;
  ASSERT_EQ(cert.stages.size(), 5u);
  EXPECT_TRUE(cert.passed());
  const Rational m1 = 1;
  for (std::size_t j = 0; j < cert.stages.size(); ++j) {
    if (j > 0) EXPECT_LT(cert.stages[j].m_star, cert.stages[j - 1].m_star);
    const std::size_t i = cert.stages[j].stage;
    if (i >= 3) EXPECT_LT(cert.stages[j].m_star, pow2(1 - static_cast<long>(i) + 1) * m1);
  }
}

TEST(BuildNone, CapAndDepthErrors) {
  EXPECT_THROW(build_none({0}), Error);
  NoneSpecParams p{4, Integer(100)};
  try {
    build_none(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::budget_exhausted);
    EXPECT_NE(std::string(e.what()).find("stage 3"), std::string::npos);
  }
}

TEST(Spiral, FirstPointsAndCoverage) {
  std::vector<LatticeVector> first;
  for (std::size_t i = 1; i <= 9; ++i) first.push_back(spiral_point(i));
  EXPECT_EQ(first, (std::vector<LatticeVector>{V(1, 0), V(1, 1), V(0, 1), V(-1, 1), V(-1, 0), V(-1, -1), V(0, -1),
                                               V(1, -1), V(2, -1)}));
  std::set<LatticeVector> seen;
  for (std::size_t i = 1; i <= 440; ++i) {
    auto p = spiral_point(i);
    EXPECT_FALSE(p.is_zero());
    EXPECT_TRUE(seen.insert(p).second);
  }
  for (long long x = -10; x <= 10; ++x)
    for (long long y = -10; y <= 10; ++y)
      if (x || y) EXPECT_TRUE(seen.contains(V(x, y)));
}

TEST(Spiral, EveryPrimitiveDirectionRecurs) {
  // Within the first (2(N·m)+1)² points every primitive u with ‖u‖∞ ≤ N
  // appears through at least m distinct multiples.
  const long long N = 4, m = 3;
  std::map<std::pair<long long, long long>, int> hits;
  const std::size_t E = (2 * N * m + 1) * (2 * N * m + 1) - 1;
  for (std::size_t i = 1; i <= E; ++i) {
    auto d = direction_of(spiral_point(i)).rational();
    hits[{d.p.convert_to<long long>(), d.q.convert_to<long long>()}]++;
  }
  for (long long x = -N; x <= N; ++x)
    for (long long y = 0; y <= N; ++y) {
      if ((y == 0 && x <= 0) || std::gcd(x, y) != 1) continue;
      EXPECT_GE((hits[{x, y}]), 2 * m) << x << "," << y;
    }
}

TEST(BuildAll, FirstStageAndVacuousExclusion) {
  AllSpecParams p;
  p.depth = 4;
  auto b = build_all(p);
  ASSERT_EQ(b.choices.size(), 4u);
  EXPECT_EQ(b.choices[0].u, V(1, 0));
  EXPECT_EQ(b.choices[0].t, 3);
  EXPECT_TRUE(b.audit.empty());
  Construction c(b.spec);
  std::vector<long long> sides;
  for (std::size_t i = 1; i <= c.stage_count(); ++i) sides.push_back(c.stage(i).shape.n.convert_to<long long>());
  EXPECT_EQ(sides, (std::vector<long long>{2, 5, 14, 41, 122}));
  for (std::size_t i = 0; i < b.choices.size(); ++i) {
    const auto& ch = b.choices[i];
    const Integer n = c.stage(i + 1).shape.n;
    EXPECT_GE((ch.t * ch.u).max_norm(), 2 * n - 1);
    EXPECT_LT(((ch.t - 1) * ch.u).max_norm(), 2 * n - 1);
    EXPECT_EQ(ch.eps, pow2(-static_cast<long>(i + 1)));
  }
}

TEST(BuildAll, ExcludesSqrtTwo) {
  AllSpecParams p;
  p.depth = 8;
  p.alphas = {Direction::tan_sqrt(2)};
  auto b = build_all(p);
  ASSERT_EQ(b.audit.size(), 8u);
  for (const auto& r : b.audit) {
    EXPECT_GT(r.gap, 0);
    EXPECT_FALSE(direction_window(r.w, r.eps).contains(p.alphas[0]));
    EXPECT_FALSE(in_tunnel(r.w, p.alphas[0], r.eps));
    // Independently re-check the enclosures.
    EXPECT_TRUE(r.alpha.contains(Rational(1) - Rational(1) / (Rational(1) + Rational(1414213562, 1000000000))) ||
                r.alpha.width() < Rational(1, 1000000));
  }
  AllSpecParams bad;
  bad.alphas = {direction_of(V(1, 1))};
  EXPECT_THROW(build_all(bad), Error);
}

TEST(BuildCustom, Validation) {
  EXPECT_NO_THROW(build_custom(worked_spec()));
  ConstructionSpec s = worked_spec();
  s.stages[0].placements = {V(0, 0), V(1, 1)};
  try {
    build_custom(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::overlapping_boxes);
    EXPECT_NE(std::string(e.what()).find("stage 1"), std::string::npos);
  }
  s.stages[0].placements = {V(2, 2), V(5, 5)};
  EXPECT_THROW(build_custom(s), Error);
}

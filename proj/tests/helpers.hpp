#pragma once

#include <random>

#include "rankone/tower.hpp"

namespace fixtures {

using namespace rankone;

inline LatticeVector V(long long x, long long y) { return {x, y}; }
inline Rational Q(long long p, long long q = 1) { return Rational(p, q); }

/// Corner, n₁ = 2, unit levels, one stage with placements {0, (2,2)}.
inline ConstructionSpec worked_spec() {
  ConstructionSpec s;
  s.convention = Convention::Corner;
  s.n1 = 2;
  s.level1_len = 1;
  s.stages.push_back({{V(0, 0), V(2, 2)}});
  return s;
}

/// Small random valid spec: up to `max_stages` extensions, k ∈ [1,3],
/// stopping before a shape exceeds `max_levels` positions.
inline ConstructionSpec random_spec(std::mt19937_64& rng, int max_stages = 3, long long max_levels = 4000) {
  std::uniform_int_distribution<int> coin(0, 1), n1d(1, 3), kd(1, 3), ld(1, 4), sd(1, max_stages);
  ConstructionSpec s;
  s.convention = coin(rng) ? Convention::Corner : Convention::Centered;
  s.n1 = n1d(rng);
  s.level1_len = Q(ld(rng), ld(rng));
  Integer n = s.n1;
  const int stages = sd(rng);
  for (int i = 0; i < stages; ++i) {
    const int k = kd(rng);
    const Integer side = s.convention == Convention::Corner ? n : 2 * n - 1;
    const long long sv = side.convert_to<long long>();
    std::vector<LatticeVector> pl{V(0, 0)};
    std::uniform_int_distribution<long long> cd(s.convention == Convention::Corner ? 0 : -2 * sv, 2 * sv);
    for (int tries = 0; (int)pl.size() < k && tries < 200; ++tries) {
      LatticeVector c = V(cd(rng), cd(rng));
      bool ok = true;
      for (const auto& p : pl)
        if ((p - c).max_norm() < side) ok = false;
      if (ok) pl.push_back(c);
    }
    std::shuffle(pl.begin() + 1, pl.end(), rng);
    if (coin(rng) && pl.size() > 1) std::swap(pl[0], pl[1]);  // zero need not be first
    Integer m = 0;
    for (const auto& p : pl) m = std::max(m, s.convention == Convention::Corner ? std::max(p.x, p.y) : p.max_norm());
    const Integer next = m + n;
    const Integer count = s.convention == Convention::Corner ? next * next : (2 * next - 1) * (2 * next - 1);
    if (count > max_levels) break;
    n = next;
    s.stages.push_back({pl});
  }
  return s;
}

}  // namespace fixtures
